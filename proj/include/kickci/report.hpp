#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kickci/kick.hpp"
#include "kickci/measures.hpp"

namespace kickci {

inline constexpr const char* kSchemaVersion = "kickci-report/1";

struct Norms {
  double aa = 0.0;
  double bb = 0.0;
  double ab = 0.0;
};

struct Diagnostics {
  std::string source;
  std::size_t dimension = 0;
  int norb = 0;
  int nalpha = 0;
  int nbeta = 0;
  int iterations = 0;
  double residual = 0.0;
};

/// One row of a scan, or the single result of solve / measures / kick.
struct MeasureReport {
  std::string system;
  std::string geometry;
  std::optional<double> energy;
  std::optional<EntropyReport> entropies;
  std::optional<Norms> norms;
  std::optional<KickReport> kick;
  Diagnostics diagnostics;
};

/// x rounded to 12 significant digits, -0 folded to 0. Throws PhysicsError
/// for non-finite values.
double round12(double x);

/// Keys sorted, floats rounded to 12 significant digits, undefined measures
/// as null.
nlohmann::json to_json(const MeasureReport& r);
std::string dump_json(const MeasureReport& r, bool pretty = true);

/// Frozen CSV column order (also listed in docs/report.schema.json).
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const MeasureReport& r);

}  // namespace kickci
