#include "kickci/detspace.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kickci {

namespace {

struct BinomialTable {
  std::uint64_t c[65][65] = {};
  BinomialTable() {
    for (int n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const BinomialTable& table() {
  static const BinomialTable t;
  return t;
}

void check_params(int norb, int ne) {
  if (norb < 0 || norb > 64 || ne < 0 || ne > norb)
    throw std::invalid_argument("string space needs 0 <= ne <= norb <= 64 (norb=" +
                                std::to_string(norb) + ", ne=" + std::to_string(ne) + ")");
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return table().c[n][k];
}

SpinString SpinString::from_orbitals(std::span<const int> occ) {
  SpinString s;
  for (int p : occ) {
    if (p < 0 || p >= 64) throw std::invalid_argument("orbital index out of range");
    if (s.occupied(p)) throw std::invalid_argument("orbital listed twice");
    s.bits |= std::uint64_t{1} << p;
  }
  return s;
}

std::vector<int> SpinString::orbitals() const {
  std::vector<int> occ;
  for (std::uint64_t b = bits; b; b &= b - 1) occ.push_back(__builtin_ctzll(b));
  return occ;
}

bool lex_less(SpinString a, SpinString b) {
  // First differing orbital decides: the string holding it sorts first.
  const std::uint64_t diff = a.bits ^ b.bits;
  if (!diff) return false;
  return (a.bits >> __builtin_ctzll(diff)) & 1u;
}

std::vector<SpinString> enumerate_strings(int norb, int ne) {
  check_params(norb, ne);
  std::vector<SpinString> out;
  out.reserve(binomial(norb, ne));
  std::vector<int> occ(ne);
  for (int i = 0; i < ne; ++i) occ[i] = i;
  while (true) {
    out.push_back(SpinString::from_orbitals(occ));
    int i = ne - 1;
    while (i >= 0 && occ[i] == norb - ne + i) --i;
    if (i < 0) break;
    ++occ[i];
    for (int j = i + 1; j < ne; ++j) occ[j] = occ[j - 1] + 1;
  }
  return out;
}

std::size_t string_address(SpinString s, int norb, int ne) {
  if (s.count() != ne || (norb < 64 && (s.bits >> norb) != 0))
    throw std::invalid_argument("string does not belong to the (" + std::to_string(norb) + ", " +
                                std::to_string(ne) + ") space");
  // Strings preceding s share its first i orbitals and place orbital i at a
  // smaller index j; each such j contributes C(norb-1-j, ne-1-i).
  std::size_t rank = 0;
  int prev = -1;
  int i = 0;
  for (std::uint64_t b = s.bits; b; b &= b - 1, ++i) {
    const int a = __builtin_ctzll(b);
    const int m = ne - 1 - i;
    rank += binomial(norb - 1 - prev, m + 1) - binomial(norb - a, m + 1);
    prev = a;
  }
  return rank;
}

std::vector<Excitation> single_excitations(SpinString s, int norb) {
  std::vector<Excitation> out;
  for (int q : s.orbitals()) {
    out.push_back({q, q, 1, s});
    const SpinString removed{s.bits & ~(std::uint64_t{1} << q)};
    for (int p = 0; p < norb; ++p) {
      if (s.occupied(p)) continue;
      const int lo = std::min(p, q), hi = std::max(p, q);
      const int between = removed.count_below(hi) - removed.count_below(lo + 1);
      out.push_back({p, q, (between & 1) ? -1 : 1,
                     SpinString{removed.bits | (std::uint64_t{1} << p)}});
    }
  }
  return out;
}

StringTable::StringTable(int norb, int ne)
    : norb_(norb), ne_(ne), strings_(enumerate_strings(norb, ne)) {
  offsets_.reserve(strings_.size() + 1);
  offsets_.push_back(0);
  for (SpinString s : strings_) {
    for (const Excitation& e : single_excitations(s, norb))
      links_.push_back({static_cast<std::uint32_t>(address(e.target)),
                        static_cast<std::uint8_t>(e.p), static_cast<std::uint8_t>(e.q),
                        static_cast<std::int8_t>(e.sign)});
    offsets_.push_back(links_.size());
  }
}

DetSpace::DetSpace(int norb, int nalpha, int nbeta) : alpha_(norb, nalpha), beta_(norb, nbeta) {}

}  // namespace kickci
