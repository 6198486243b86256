#include "kickci/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace kickci {

namespace {

constexpr double kConflictTol = 1e-12;
constexpr int kMaxOrbitals = 64;

std::size_t pair_index(int p, int q) {
  if (p < q) std::swap(p, q);
  return static_cast<std::size_t>(p) * (p + 1) / 2 + q;
}

void check_electrons(int norb, int nelec, int ms2) {
  if (nelec < 0 || nelec > 2 * norb)
    throw InputError("NELEC=" + std::to_string(nelec) + " outside [0, 2*NORB]");
  if ((nelec - ms2) % 2 != 0)
    throw InputError("NELEC and MS2 parity mismatch (NELEC=" + std::to_string(nelec) +
                     ", MS2=" + std::to_string(ms2) + ")");
  const int na = (nelec + ms2) / 2;
  const int nb = (nelec - ms2) / 2;
  if (na < 0 || nb < 0 || na > norb || nb > norb)
    throw InputError("MS2=" + std::to_string(ms2) + " incompatible with NELEC/NORB");
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

// Namelist header: everything between the leading `&NAME` and `&END` (or `/`).
struct Namelist {
  std::string name;
  std::map<std::string, std::vector<std::string>> values;
  std::string_view body;
};

Namelist split_namelist(std::string_view text, std::string_view expected) {
  std::size_t start = text.find_first_not_of(" \t\r\n");
  if (start == std::string_view::npos || text[start] != '&')
    throw InputError("missing &" + std::string(expected) + " header");
  std::size_t name_end = start + 1;
  while (name_end < text.size() && std::isalpha(static_cast<unsigned char>(text[name_end])))
    ++name_end;
  Namelist nl;
  nl.name = upper(std::string(text.substr(start + 1, name_end - start - 1)));
  if (nl.name != expected)
    throw InputError("expected &" + std::string(expected) + " header, found &" + nl.name);

  // Terminator: "&END" (any case) or a lone '/'.
  std::string rest_upper = upper(std::string(text.substr(name_end)));
  std::size_t end_pos = rest_upper.find("&END");
  std::size_t term_len = 4;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < rest_upper.size(); ++i) {
    if (rest_upper[i] == '/') {
      slash = i;
      break;
    }
    if (rest_upper[i] == '&') break;
  }
  if (slash != std::string::npos && (end_pos == std::string::npos || slash < end_pos)) {
    end_pos = slash;
    term_len = 1;
  }
  if (end_pos == std::string::npos) throw InputError("unterminated &" + nl.name + " header");

  std::string header(text.substr(name_end, end_pos));
  nl.body = text.substr(name_end + end_pos + term_len);

  // Normalize "KEY = v1, v2," into whitespace-separated tokens.
  std::string norm;
  for (char c : header) norm.push_back(c == ',' ? ' ' : c);
  std::string spaced;
  for (char c : norm) {
    if (c == '=') {
      spaced += " = ";
    } else {
      spaced.push_back(c);
    }
  }
  std::istringstream is(spaced);
  std::vector<std::string> tokens{std::istream_iterator<std::string>(is), {}};
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i + 1 < tokens.size() && tokens[i + 1] == "=") {
      key = upper(tokens[i]);
      if (nl.values.count(key)) throw InputError("duplicate header key " + key);
      nl.values[key];
      ++i;
      continue;
    }
    if (tokens[i] == "=" || key.empty()) throw InputError("malformed header near '" + tokens[i] + "'");
    nl.values[key].push_back(tokens[i]);
  }
  return nl;
}

int parse_int(const std::string& s, const std::string& key) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError("header key " + key + ": not an integer: '" + s + "'");
  return v;
}

int required_int(const Namelist& nl, const std::string& key) {
  auto it = nl.values.find(key);
  if (it == nl.values.end()) throw InputError("header key " + key + " missing");
  if (it->second.size() != 1) throw InputError("header key " + key + " needs one value");
  return parse_int(it->second.front(), key);
}

double parse_value(std::string s) {
  // Fortran writers emit 1.0D-03.
  for (char& c : s)
    if (c == 'D' || c == 'd') c = 'E';
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) throw InputError("bad numeric value '" + s + "'");
  return v;
}

struct Record {
  double value;
  int i, j, k, l;
  std::size_t line;
};

std::vector<Record> parse_records(std::string_view body) {
  std::vector<Record> out;
  std::istringstream is{std::string(body)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok{std::istream_iterator<std::string>(ls), {}};
    if (tok.empty()) continue;
    if (tok.size() != 5)
      throw InputError("record on body line " + std::to_string(lineno) + " needs 5 fields");
    Record r{parse_value(tok[0]), 0, 0, 0, 0, lineno};
    r.i = parse_int(tok[1], "index");
    r.j = parse_int(tok[2], "index");
    r.k = parse_int(tok[3], "index");
    r.l = parse_int(tok[4], "index");
    out.push_back(r);
  }
  return out;
}

void check_index(int idx, int norb, std::size_t line) {
  if (idx < 0 || idx > norb)
    throw InputError("index " + std::to_string(idx) + " out of [0, NORB] on body line " +
                     std::to_string(line));
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

IntegralSet::IntegralSet(int norb, int nelec, int ms2) : norb_(norb), nelec_(nelec), ms2_(ms2) {
  if (norb < 1 || norb > kMaxOrbitals)
    throw InputError("NORB=" + std::to_string(norb) + " outside [1, 64]");
  check_electrons(norb, nelec, ms2);
  h_ = RealMatrix::Zero(norb, norb);
  const std::size_t npair = pair_index(norb - 1, norb - 1) + 1;
  eri_.assign(npair * (npair + 1) / 2, 0.0);
}

void IntegralSet::set_electrons(int nelec, int ms2) {
  check_electrons(norb_, nelec, ms2);
  nelec_ = nelec;
  ms2_ = ms2;
}

void IntegralSet::set_h(int p, int q, double value) {
  h_(p, q) = value;
  h_(q, p) = value;
}

std::size_t IntegralSet::canonical_index(int p, int q, int r, int s) const {
  return pair_index(static_cast<int>(pair_index(p, q)), static_cast<int>(pair_index(r, s)));
}

void IntegralSet::set_eri(int p, int q, int r, int s, double value) {
  eri_[canonical_index(p, q, r, s)] = value;
}

std::vector<double> IntegralSet::dense_eri() const {
  const std::size_t n = norb_;
  std::vector<double> out(n * n * n * n);
  for (int p = 0; p < norb_; ++p)
    for (int q = 0; q < norb_; ++q)
      for (int r = 0; r < norb_; ++r)
        for (int s = 0; s < norb_; ++s) out[((p * n + q) * n + r) * n + s] = eri(p, q, r, s);
  return out;
}

bool OneBodyOperator::is_hermitian(double tol) const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

IntegralSet parse_fcidump(std::string_view text) {
  Namelist nl = split_namelist(text, "FCI");
  const int norb = required_int(nl, "NORB");
  const int nelec = required_int(nl, "NELEC");
  const int ms2 = required_int(nl, "MS2");
  IntegralSet ints(norb, nelec, ms2);

  if (auto it = nl.values.find("ORBSYM"); it != nl.values.end()) {
    std::vector<int> sym;
    for (const auto& v : it->second) sym.push_back(parse_int(v, "ORBSYM"));
    if (static_cast<int>(sym.size()) != norb) throw InputError("ORBSYM length differs from NORB");
    ints.set_orbsym(std::move(sym));
  }
  if (nl.values.count("ISYM")) ints.set_isym(required_int(nl, "ISYM"));

  std::vector<char> eri_set(ints.eri_storage_size(), 0);
  std::vector<char> h_set(static_cast<std::size_t>(norb) * norb, 0);
  bool core_set = false;

  auto conflict = [](double old, double now, const Record& r) {
    if (std::abs(old - now) > kConflictTol)
      throw InputError("conflicting values for symmetry-equivalent integral on body line " +
                       std::to_string(r.line));
  };

  for (const Record& r : parse_records(nl.body)) {
    for (int idx : {r.i, r.j, r.k, r.l}) check_index(idx, norb, r.line);
    if (r.i > 0 && r.j > 0 && r.k > 0 && r.l > 0) {
      const std::size_t c = ints.canonical_index(r.i - 1, r.j - 1, r.k - 1, r.l - 1);
      if (eri_set[c]) conflict(ints.eri(r.i - 1, r.j - 1, r.k - 1, r.l - 1), r.value, r);
      ints.set_eri(r.i - 1, r.j - 1, r.k - 1, r.l - 1, r.value);
      eri_set[c] = 1;
    } else if (r.i > 0 && r.j > 0 && r.k == 0 && r.l == 0) {
      const int p = std::max(r.i, r.j) - 1, q = std::min(r.i, r.j) - 1;
      if (h_set[p * norb + q]) conflict(ints.h(p, q), r.value, r);
      ints.set_h(p, q, r.value);
      h_set[p * norb + q] = 1;
    } else if (r.i == 0 && r.j == 0 && r.k == 0 && r.l == 0) {
      if (core_set) conflict(ints.e_core(), r.value, r);
      ints.set_e_core(r.value);
      core_set = true;
    } else if (r.i > 0 && r.j == 0 && r.k == 0 && r.l == 0) {
      // Orbital energies; not part of the Hamiltonian.
    } else {
      throw InputError("unrecognized index pattern on body line " + std::to_string(r.line));
    }
  }
  return ints;
}

IntegralSet read_fcidump(const std::string& path) { return parse_fcidump(slurp(path)); }

void write_fcidump(std::ostream& os, const IntegralSet& ints) {
  const int n = ints.norb();
  os << "&FCI NORB=" << n << ",NELEC=" << ints.nelec() << ",MS2=" << ints.ms2() << ",\n";
  os << " ORBSYM=";
  for (int p = 0; p < n; ++p)
    os << (ints.orbsym().empty() ? 1 : ints.orbsym()[p]) << ",";
  os << "\n ISYM=" << ints.isym() << ",\n&END\n";
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (pair_index(p, q) < pair_index(r, s)) continue;
          const double v = ints.eri(p, q, r, s);
          if (v != 0.0)
            os << format_value(v) << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' ' << s + 1
               << '\n';
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (ints.h(p, q) != 0.0)
        os << format_value(ints.h(p, q)) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
  os << format_value(ints.e_core()) << " 0 0 0 0\n";
}

OneBodyOperator parse_operator_file(std::string_view text) {
  Namelist nl = split_namelist(text, "OPER");
  const int norb = required_int(nl, "NORB");
  if (norb < 1 || norb > kMaxOrbitals)
    throw InputError("NORB=" + std::to_string(norb) + " outside [1, 64]");
  OneBodyOperator op;
  if (auto it = nl.values.find("LABEL"); it != nl.values.end()) {
    if (it->second.size() != 1) throw InputError("LABEL needs one value");
    op.label = it->second.front();
    if (op.label.size() >= 2 && (op.label.front() == '\'' || op.label.front() == '"'))
      op.label = op.label.substr(1, op.label.size() - 2);
  }
  op.matrix = ComplexMatrix::Zero(norb, norb);
  std::vector<char> set(static_cast<std::size_t>(norb) * norb, 0);
  for (const Record& r : parse_records(nl.body)) {
    for (int idx : {r.i, r.j, r.k, r.l}) check_index(idx, norb, r.line);
    if (r.k != 0 || r.l != 0)
      throw InputError("two-electron record in operator file on body line " +
                       std::to_string(r.line));
    if (r.i == 0 || r.j == 0)
      throw InputError("operator records need i, j >= 1 (body line " + std::to_string(r.line) + ")");
    const int p = std::max(r.i, r.j) - 1, q = std::min(r.i, r.j) - 1;
    if (set[p * norb + q] && std::abs(op.matrix(p, q).real() - r.value) > kConflictTol)
      throw InputError("conflicting operator element on body line " + std::to_string(r.line));
    op.matrix(p, q) = op.matrix(q, p) = r.value;
    set[p * norb + q] = 1;
  }
  return op;
}

OneBodyOperator read_operator_file(const std::string& path) {
  return parse_operator_file(slurp(path));
}

void write_operator_file(std::ostream& os, const OneBodyOperator& op) {
  if ((op.matrix.imag().array() != 0.0).any())
    throw InputError("operator file format carries real elements only");
  os << "&OPER NORB=" << op.norb() << " LABEL=" << (op.label.empty() ? "op" : op.label)
     << " &END\n";
  for (int p = 0; p < op.norb(); ++p)
    for (int q = 0; q <= p; ++q)
      if (op.matrix(p, q).real() != 0.0)
        os << format_value(op.matrix(p, q).real()) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
}

void validate_operator(const OneBodyOperator& op, const IntegralSet& ints) {
  if (op.norb() != ints.norb())
    throw InputError("operator '" + op.label + "' has NORB=" + std::to_string(op.norb()) +
                     " but the Hamiltonian has NORB=" + std::to_string(ints.norb()));
}

IntegralSet make_hubbard_model(int nsites, double t, double u, bool periodic) {
  if (nsites < 1) throw std::invalid_argument("make_hubbard_model: nsites must be >= 1");
  IntegralSet ints(nsites, nsites, nsites % 2);
  for (int p = 0; p + 1 < nsites; ++p) ints.set_h(p, p + 1, -t);
  if (periodic && nsites > 2) ints.set_h(0, nsites - 1, -t);
  for (int p = 0; p < nsites; ++p) ints.set_eri(p, p, p, p, u);
  return ints;
}

std::string slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace kickci
