#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace kickci {

/// Occupation pattern of one spin channel; bit p set <=> orbital p occupied.
struct SpinString {
  std::uint64_t bits = 0;

  static SpinString from_orbitals(std::span<const int> occ);
  std::vector<int> orbitals() const;
  int count() const { return __builtin_popcountll(bits); }
  bool occupied(int p) const { return (bits >> p) & 1u; }
  /// Number of occupied orbitals with index strictly below p.
  int count_below(int p) const {
    return __builtin_popcountll(bits & ((std::uint64_t{1} << p) - 1));
  }
  friend bool operator==(SpinString, SpinString) = default;
};

/// Lexicographic order on the sorted orbital lists.
bool lex_less(SpinString a, SpinString b);

/// All C(norb, ne) strings in ascending lexicographic order.
std::vector<SpinString> enumerate_strings(int norb, int ne);

/// Rank of s among the (norb, ne) strings, from binomial weights.
std::size_t string_address(SpinString s, int norb, int ne);

std::uint64_t binomial(int n, int k);

/// E_pq |s> = sign |target>, with E_pq = c†_p c_q on one spin channel.
struct Excitation {
  int p;
  int q;
  int sign;
  SpinString target;
};

/// All (p, q) with q occupied and p empty or p == q; diagonal entries first
/// per q.
std::vector<Excitation> single_excitations(SpinString s, int norb);

/// Excitation with the target replaced by its address.
struct StringLink {
  std::uint32_t target;
  std::uint8_t p;
  std::uint8_t q;
  std::int8_t sign;
};

/// Strings of one spin channel plus their precomputed single-excitation
/// connectivity in CSR form.
class StringTable {
 public:
  StringTable(int norb, int ne);

  int norb() const { return norb_; }
  int nelec() const { return ne_; }
  std::size_t size() const { return strings_.size(); }
  SpinString operator[](std::size_t i) const { return strings_[i]; }
  const std::vector<SpinString>& strings() const { return strings_; }
  std::size_t address(SpinString s) const { return string_address(s, norb_, ne_); }

  std::span<const StringLink> links(std::size_t i) const {
    return {links_.data() + offsets_[i], links_.data() + offsets_[i + 1]};
  }

 private:
  int norb_;
  int ne_;
  std::vector<SpinString> strings_;
  std::vector<std::size_t> offsets_;
  std::vector<StringLink> links_;
};

/// Determinant space: α strings × β strings. Determinants are ordered with the
/// α block before the β block; flattened index = Iα * nβ + Iβ.
class DetSpace {
 public:
  DetSpace(int norb, int nalpha, int nbeta);

  int norb() const { return alpha_.norb(); }
  int nalpha() const { return alpha_.nelec(); }
  int nbeta() const { return beta_.nelec(); }
  int nelec() const { return nalpha() + nbeta(); }
  const StringTable& alpha() const { return alpha_; }
  const StringTable& beta() const { return beta_; }
  std::size_t dimension() const { return alpha_.size() * beta_.size(); }

  friend bool operator==(const DetSpace& a, const DetSpace& b) {
    return a.norb() == b.norb() && a.nalpha() == b.nalpha() && a.nbeta() == b.nbeta();
  }

 private:
  StringTable alpha_;
  StringTable beta_;
};

using DetSpacePtr = std::shared_ptr<const DetSpace>;

inline DetSpacePtr make_space(int norb, int nalpha, int nbeta) {
  return std::make_shared<const DetSpace>(norb, nalpha, nbeta);
}

}  // namespace kickci
