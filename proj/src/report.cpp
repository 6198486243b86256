#include "kickci/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace kickci {

using nlohmann::json;

namespace {

json num(double x) { return round12(x); }

json opt(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

json opt_diff(const std::optional<double>& a, const std::optional<double>& b) {
  return (a && b) ? num(*a - *b) : json(nullptr);
}

json entropies_json(const EntropyReport& e, int nalpha) {
  json j;
  j["s1"] = num(e.s1);
  j["purity"] = num(e.purity);
  j["s0_1"] = nalpha > 0 ? num(std::log(static_cast<double>(nalpha))) : json(nullptr);
  j["s_aa"] = opt(e.s_aa);
  j["s_ab"] = opt(e.s_ab);
  j["s0_aa"] = opt(e.s0_aa);
  j["s0_ab"] = opt(e.s0_ab);
  j["rel_aa"] = opt_diff(e.s_aa, e.s0_aa);
  j["rel_ab"] = opt_diff(e.s_ab, e.s0_ab);
  j["gap1"] = opt(e.gap1);
  j["gap2"] = opt(e.gap2);
  j["floor_aa"] = opt(e.floor_aa);
  j["s1_so"] = num(e.s1_so);
  j["purity_so"] = num(e.purity_so);
  j["s_so"] = opt(e.s_so);
  j["s0_so"] = opt(e.s0_so);
  j["rel_so"] = opt_diff(e.s_so, e.s0_so);
  j["gap1_so"] = opt(e.gap1_so);
  j["gap2_so"] = opt(e.gap2_so);
  return j;
}

json kick_json(const KickReport& k) {
  json j;
  const auto& m = k.moments;
  const auto& o = k.order2;
  j["mean_s"] = num(o.mean_s);
  j["s1m"] = num(m.s1.real());
  j["s2m"] = num(m.s2.real());
  j["s3m"] = num(m.s3.real());
  j["cumulant_imag_max"] =
      num(std::max({std::abs(m.s1.imag()), std::abs(m.s2.imag()), std::abs(m.s3.imag())}));
  j["sigma2_s"] = num(o.sigma2_s);
  j["one_body_sq"] = num(o.one_body_sq);
  j["golden_rule"] = num(o.golden_rule);
  j["s2_rdm"] = num(o.s2_rdm);
  j["s2_no"] = num(o.s2_no);
  j["route_gap"] = num(std::abs(o.s2_rdm - o.s2_no));
  j["zz_aa"] = num(o.zz_aa);
  j["zz_bb"] = num(o.zz_bb);
  j["zz_ab"] = num(o.zz_ab);
  j["p_exact"] = num(k.survival.p_exact);
  j["overlap_re"] = num(k.survival.overlap.real());
  j["overlap_im"] = num(k.survival.overlap.imag());
  j["p_order2"] = num(k.p_order2);
  j["p_exp"] = num(k.p_exp);
  j["series_terms"] = k.survival.terms;
  j["substeps"] = k.survival.substeps;
  if (k.scan) {
    json rows = json::array();
    for (const auto& r : k.scan->rows)
      rows.push_back({{"lambda", num(r.lambda)},
                      {"p_exact", num(r.p_exact)},
                      {"p_order2", num(r.p_order2)},
                      {"residual", num(r.residual)}});
    j["scan"] = {{"rows", rows}, {"slope", opt(k.scan->slope)}};
  } else {
    j["scan"] = nullptr;
  }
  return j;
}

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return v.dump();
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) throw PhysicsError("report field is not finite");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json to_json(const MeasureReport& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["system"] = r.system;
  j["geometry"] = r.geometry;
  j["energy"] = opt(r.energy);
  j["entropies"] = r.entropies ? entropies_json(*r.entropies, r.diagnostics.nalpha) : json(nullptr);
  j["norms"] = r.norms ? json{{"aa", num(r.norms->aa)}, {"bb", num(r.norms->bb)}, {"ab", num(r.norms->ab)}}
                       : json(nullptr);
  j["kick"] = r.kick ? kick_json(*r.kick) : json(nullptr);
  const auto& d = r.diagnostics;
  j["diagnostics"] = {{"source", d.source},       {"dimension", d.dimension},
                      {"norb", d.norb},           {"nalpha", d.nalpha},
                      {"nbeta", d.nbeta},         {"iterations", d.iterations},
                      {"residual", num(d.residual)}};
  return j;
}

std::string dump_json(const MeasureReport& r, bool pretty) {
  return pretty ? to_json(r).dump(2) : to_json(r).dump();
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "system",          "geometry",          "energy",
      "entropies.s1",    "entropies.purity",  "entropies.s_aa",
      "entropies.s_ab",  "entropies.s0_aa",   "entropies.s0_ab",
      "entropies.rel_aa", "entropies.rel_ab", "entropies.gap1",
      "entropies.gap2",  "entropies.floor_aa", "entropies.s1_so",
      "entropies.s_so",  "entropies.gap1_so", "entropies.gap2_so",
      "norms.aa",        "norms.bb",          "norms.ab",
      "kick.mean_s",     "kick.s2m",          "kick.s2_rdm",
      "kick.s2_no",      "kick.sigma2_s",     "kick.zz_aa",
      "kick.zz_bb",      "kick.zz_ab",        "kick.p_exact",
      "kick.p_order2",   "kick.p_exp",        "kick.scan.slope",
      "diagnostics.dimension", "diagnostics.iterations", "diagnostics.residual"};
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string csv_row(const MeasureReport& r) {
  const json j = to_json(r);
  std::string out;
  bool first = true;
  for (const auto& c : csv_columns()) {
    const json* v = &j;
    std::size_t start = 0;
    while (v && !v->is_null()) {
      const std::size_t dot = c.find('.', start);
      const std::string key = c.substr(start, dot == std::string::npos ? dot : dot - start);
      v = v->contains(key) ? &(*v)[key] : nullptr;
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    if (!first) out += ',';
    first = false;
    out += v ? cell(*v) : "";
  }
  return out;
}

}  // namespace kickci
