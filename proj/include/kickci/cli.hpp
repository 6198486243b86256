#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kickci/integrals.hpp"
#include "kickci/report.hpp"

namespace kickci::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kInputError = 1, kNotConverged = 2, kPhysicsViolation = 3 };

/// `hubbard:N,t,U[,ring|chain]` (default chain).
IntegralSet parse_model(const std::string& spec);

struct KickOptions {
  std::vector<std::string> oper_paths;
  std::vector<double> q;
  std::vector<double> lambdas;
  bool require_zero_mean = false;
  double zero_mean_tol = 1e-8;
};

struct ManifestEntry {
  std::string tag;
  std::string fcidump;  ///< resolved path, or empty
  std::string model;    ///< model spec, or empty
  std::vector<std::string> oper_paths;  ///< overrides the shared list when non-empty
};

/// JSON manifest:
///   {"system": "...", "kick": {"oper": [...], "q": [...], "lambda_scan": [...],
///    "require_zero_mean": false}, "entries": [{"tag": "...", "fcidump": "..."}]}
/// Relative paths resolve against `base`.
struct ScanManifest {
  std::string system;
  std::optional<KickOptions> kick;
  std::vector<ManifestEntry> entries;
};

ScanManifest parse_manifest(const std::string& text, const std::filesystem::path& base);

/// Entry point behind the `kickci` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kickci::cli
