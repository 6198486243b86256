#include "kickci/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "kickci/davidson.hpp"
#include "kickci/kappa7.hpp"

namespace kickci::cli {

using nlohmann::json;

namespace {

enum class Level { solve, measures, kick };

struct SystemOptions {
  std::string fcidump;
  std::string model;
  std::string analytic;
  int nelec = -1;
  int ms2 = -1000;
  double tol = 1e-8;
  int max_iter = 200;
  std::string system;
  std::string geometry;
  bool json_out = false;
  bool csv_out = false;
  std::string out_path;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("bad number for " + what + ": '" + s + "'");
  }
  if (used != s.size()) throw InputError("bad number for " + what + ": '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v != std::floor(v)) throw InputError(what + " must be an integer");
  return static_cast<int>(v);
}

void apply_electrons(IntegralSet& ints, int nelec, int ms2) {
  if (nelec < 0 && ms2 == -1000) return;
  const int ne = nelec >= 0 ? nelec : ints.nelec();
  const int m = ms2 != -1000 ? ms2 : ne % 2;
  try {
    ints.set_electrons(ne, m);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

struct LoadedSystem {
  IntegralSet ints;
  std::string source;
};

LoadedSystem load_system(const std::string& fcidump, const std::string& model) {
  if (!fcidump.empty() && !model.empty()) throw InputError("give either --fcidump or --model");
  if (!fcidump.empty()) return {read_fcidump(fcidump), fcidump};
  if (!model.empty()) return {parse_model(model), model};
  throw InputError("no system given (use --fcidump or --model)");
}

KickSpec load_kick(const std::vector<std::string>& paths, const std::vector<double>& q,
                   const IntegralSet& ints) {
  if (paths.empty()) throw InputError("kick needs at least one --oper");
  if (paths.size() != q.size())
    throw InputError("give one --q value per --oper (" + std::to_string(paths.size()) + " operators, " +
                     std::to_string(q.size()) + " values)");
  std::vector<KickComponent> comps;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    OneBodyOperator d = read_operator_file(paths[i]);
    validate_operator(d, ints);
    comps.push_back({std::move(d), q[i]});
  }
  return build_kick(comps);
}

MeasureReport evaluate_state(const CIVector& c, MeasureReport rep, Level level,
                             const std::optional<KickSpec>& kick, const KickOptions& ko) {
  if (level == Level::solve) return rep;
  const StateRDMs r = compute_rdms(c);
  const CorrelationMeasures m = correlation_measures(r);
  rep.entropies = m.entropies;
  rep.norms = Norms{m.norm_aa, frobenius_norm(m.cbb), m.norm_ab};
  if (level == Level::kick && kick) {
    if (ko.require_zero_mean) {
      const SecondOrder o = survival_second_order(r, m, natural_orbitals(r.da), natural_orbitals(r.db), *kick);
      if (std::abs(o.mean_s) > ko.zero_mean_tol)
        throw PhysicsError("kick mean <S> = " + std::to_string(o.mean_s) + " exceeds " +
                           std::to_string(ko.zero_mean_tol));
    }
    rep.kick = kick_report(c, r, m, *kick, ko.lambdas);
  }
  return rep;
}

MeasureReport evaluate(const LoadedSystem& sys, const SystemOptions& so, Level level,
                       const std::optional<KickSpec>& kick, const KickOptions& ko) {
  const auto space = make_space(sys.ints.norb(), sys.ints.nalpha(), sys.ints.nbeta());
  SolveOptions opts;
  opts.tol = so.tol;
  opts.max_iter = so.max_iter;
  const GroundState g = solve_ground(sys.ints, space, opts);

  MeasureReport rep;
  rep.system = so.system;
  rep.geometry = so.geometry;
  rep.energy = g.energy;
  rep.diagnostics = {sys.source,         space->dimension(),   space->norb(), space->nalpha(),
                     space->nbeta(),     g.iterations,         g.residual};
  return evaluate_state(g.state, std::move(rep), level, kick, ko);
}

void emit(std::ostream& os, const std::vector<MeasureReport>& reports, bool csv, bool stream) {
  if (csv) {
    if (reports.empty()) return;
    os << csv_header() << '\n';
    for (const auto& r : reports) os << csv_row(r) << '\n';
    return;
  }
  for (const auto& r : reports) os << dump_json(r, !stream) << '\n';
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError("cannot open output file " + path);
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void add_system_options(CLI::App* app, SystemOptions& so) {
  app->add_option("--fcidump", so.fcidump, "FCIDUMP integral file ('-' for stdin)");
  app->add_option("--model", so.model, "model Hamiltonian, e.g. hubbard:6,1,4,ring");
  app->add_option("--nelec", so.nelec, "override the electron count");
  app->add_option("--ms2", so.ms2, "override 2*Sz");
  app->add_option("--tol", so.tol, "Davidson residual tolerance")->check(CLI::PositiveNumber);
  app->add_option("--max-iter", so.max_iter, "Davidson iteration limit")->check(CLI::PositiveNumber);
  app->add_option("--system", so.system, "system label written to the report");
  app->add_option("--geometry", so.geometry, "geometry tag written to the report");
  auto* j = app->add_flag("--json", so.json_out, "JSON output (default)");
  auto* c = app->add_flag("--csv", so.csv_out, "CSV output");
  j->excludes(c);
  app->add_option("--out", so.out_path, "write the report here instead of stdout");
}

}  // namespace

IntegralSet parse_model(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || spec.substr(0, colon) != "hubbard")
    throw InputError("unknown model '" + spec + "' (expected hubbard:N,t,U[,ring|chain])");
  const auto parts = split(spec.substr(colon + 1), ',');
  if (parts.size() < 3 || parts.size() > 4)
    throw InputError("hubbard model needs N,t,U[,ring|chain]: '" + spec + "'");
  const int n = parse_int(parts[0], "hubbard N");
  if (n < 1 || n > 64) throw InputError("hubbard N must be in 1..64");
  const double t = parse_double(parts[1], "hubbard t");
  const double u = parse_double(parts[2], "hubbard U");
  bool periodic = false;
  if (parts.size() == 4) {
    if (parts[3] == "ring") periodic = true;
    else if (parts[3] != "chain") throw InputError("hubbard topology must be ring or chain");
  }
  return make_hubbard_model(n, t, u, periodic);
}

ScanManifest parse_manifest(const std::string& text, const std::filesystem::path& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("manifest must be a JSON object");
  auto resolve = [&](const json& v, const std::string& what) {
    if (!v.is_string()) throw InputError("manifest: " + what + " must be a string");
    std::filesystem::path p = v.get<std::string>();
    if (p.is_relative()) p = base / p;
    return p.string();
  };
  auto paths = [&](const json& v) {
    std::vector<std::string> out;
    if (!v.is_array()) throw InputError("manifest: 'oper' must be a list of paths");
    for (const auto& p : v) out.push_back(resolve(p, "operator path"));
    return out;
  };

  ScanManifest m;
  try {
    for (const auto& [key, value] : j.items())
      if (key != "system" && key != "kick" && key != "entries")
        throw InputError("manifest: unknown key '" + key + "'");
    m.system = j.value("system", std::string{});
    if (j.contains("kick") && !j["kick"].is_null()) {
      const json& k = j["kick"];
      KickOptions ko;
      if (k.contains("oper")) ko.oper_paths = paths(k["oper"]);
      ko.q = k.value("q", std::vector<double>{});
      ko.lambdas = k.value("lambda_scan", std::vector<double>{});
      ko.require_zero_mean = k.value("require_zero_mean", false);
      ko.zero_mean_tol = k.value("zero_mean_tol", 1e-8);
      m.kick = ko;
    }
    const json entries = j.value("entries", json::array());
    if (!entries.is_array()) throw InputError("manifest: 'entries' must be a list");
    std::set<std::string> tags;
    for (const auto& e : entries) {
      if (!e.is_object() || !e.contains("tag") || !e["tag"].is_string())
        throw InputError("manifest: every entry needs a string 'tag'");
      ManifestEntry me;
      me.tag = e["tag"].get<std::string>();
      if (!tags.insert(me.tag).second) throw InputError("manifest: duplicate tag '" + me.tag + "'");
      const bool has_file = e.contains("fcidump"), has_model = e.contains("model");
      if (has_file == has_model)
        throw InputError("manifest entry '" + me.tag + "' needs exactly one of fcidump / model");
      if (has_file) me.fcidump = resolve(e["fcidump"], "fcidump");
      if (has_model) me.model = e["model"].get<std::string>();
      if (e.contains("oper")) me.oper_paths = paths(e["oper"]);
      m.entries.push_back(std::move(me));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest: ") + e.what());
  }
  return m;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Full-CI correlation probes: ground states, RDM measures, kick survival"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");

  SystemOptions so;
  KickOptions ko;
  std::string manifest_path;
  bool keep_going = false;
  std::string lambda_list;

  auto* solve = app.add_subcommand("solve", "ground-state energy");
  add_system_options(solve, so);

  auto* measures = app.add_subcommand("measures", "ground-state RDM measures");
  add_system_options(measures, so);
  measures->add_option("--analytic", so.analytic, "closed-form state instead of a solve")
      ->check(CLI::IsMember({"kappa7"}));

  auto* kick = app.add_subcommand("kick", "kick survival probability");
  add_system_options(kick, so);
  kick->add_option("--oper", ko.oper_paths, "one-body operator file (repeatable)");
  kick->add_option("--q", ko.q, "field integral for each --oper (repeatable)");
  kick->add_option("--lambda-scan", lambda_list, "comma-separated λ values for the scaling probe");
  kick->add_flag("--require-zero-mean", ko.require_zero_mean, "exit 3 when |<S>| exceeds --zero-mean-tol");
  kick->add_option("--zero-mean-tol", ko.zero_mean_tol, "threshold for --require-zero-mean");

  auto* scan = app.add_subcommand("scan", "run a manifest of geometries");
  scan->add_option("--manifest", manifest_path, "manifest JSON")->required();
  auto* sj = scan->add_flag("--json", so.json_out, "JSON Lines output (default)");
  auto* sc = scan->add_flag("--csv", so.csv_out, "CSV output");
  sj->excludes(sc);
  scan->add_option("--out", so.out_path, "write the reports here instead of stdout");
  scan->add_flag("--keep-going", keep_going, "skip geometries that fail numerically");
  scan->add_option("--tol", so.tol, "Davidson residual tolerance")->check(CLI::PositiveNumber);
  scan->add_option("--max-iter", so.max_iter, "Davidson iteration limit")->check(CLI::PositiveNumber);

  auto* dump = app.add_subcommand("fcidump", "write a model Hamiltonian as FCIDUMP");
  dump->add_option("--model", so.model, "model Hamiltonian")->required();
  dump->add_option("--nelec", so.nelec, "override the electron count");
  dump->add_option("--ms2", so.ms2, "override 2*Sz");
  dump->add_option("--out", so.out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, err, err);
    return kInputError;
  }

  try {
    if (threads > 0) kernels::set_threads(threads);

    if (*dump) {
      IntegralSet ints = parse_model(so.model);
      apply_electrons(ints, so.nelec, so.ms2);
      Output o(so.out_path, out);
      write_fcidump(o.stream(), ints);
      return kOk;
    }

    if (*scan) {
      const std::filesystem::path mp(manifest_path);
      const ScanManifest m = parse_manifest(slurp(manifest_path), mp.parent_path());
      const KickOptions mk = m.kick.value_or(KickOptions{});
      const Level level = m.kick ? Level::kick : Level::measures;

      // Parse everything before the first solve so input errors exit early.
      std::vector<LoadedSystem> systems;
      std::vector<std::optional<KickSpec>> kicks;
      for (const auto& e : m.entries) {
        systems.push_back(load_system(e.fcidump, e.model));
        if (level == Level::kick)
          kicks.push_back(load_kick(e.oper_paths.empty() ? mk.oper_paths : e.oper_paths, mk.q,
                                    systems.back().ints));
        else
          kicks.emplace_back();
      }

      std::vector<MeasureReport> reports;
      for (std::size_t i = 0; i < systems.size(); ++i) {
        SystemOptions eo = so;
        eo.system = m.system;
        eo.geometry = m.entries[i].tag;
        try {
          reports.push_back(evaluate(systems[i], eo, level, kicks[i], mk));
        } catch (const ConvergenceError& e) {
          err << "scan: geometry '" << eo.geometry << "' failed: " << e.what() << '\n';
          if (!keep_going) return kNotConverged;
        } catch (const PhysicsError& e) {
          err << "scan: geometry '" << eo.geometry << "' failed: " << e.what() << '\n';
          if (!keep_going) return kNotConverged;
        }
      }
      Output o(so.out_path, out);
      emit(o.stream(), reports, so.csv_out, true);
      return kOk;
    }

    const Level level = *solve ? Level::solve : (*measures ? Level::measures : Level::kick);
    MeasureReport rep;
    if (level == Level::measures && !so.analytic.empty()) {
      if (!so.fcidump.empty() || !so.model.empty())
        throw InputError("--analytic cannot be combined with --fcidump or --model");
      const CIVector c = build_kappa7_state();
      MeasureReport base;
      base.system = so.system.empty() ? "kappa7" : so.system;
      base.geometry = so.geometry;
      base.diagnostics = {"analytic:kappa7", c.space().dimension(), 6, 3, 3, 0, 0.0};
      rep = evaluate_state(c, std::move(base), level, std::nullopt, ko);
    } else {
      LoadedSystem sys = load_system(so.fcidump, so.model);
      apply_electrons(sys.ints, so.nelec, so.ms2);
      std::optional<KickSpec> k;
      if (level == Level::kick) {
        for (const auto& s : split(lambda_list, ','))
          if (!s.empty()) ko.lambdas.push_back(parse_double(s, "--lambda-scan"));
        k = load_kick(ko.oper_paths, ko.q, sys.ints);
      }
      rep = evaluate(sys, so, level, k, ko);
    }
    Output o(so.out_path, out);
    emit(o.stream(), {rep}, so.csv_out, false);
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << " after " << e.iterations()
        << " iterations)\n";
    return kNotConverged;
  } catch (const PhysicsError& e) {
    err << "error: " << e.what() << '\n';
    return kPhysicsViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace kickci::cli
