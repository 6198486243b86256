#include "kickci/kappa7.hpp"

#include <cmath>

namespace kickci {

namespace {

constexpr int kOrb = 6;
constexpr int kHalf = 3;

int idx(int i, int k) { return i * kOrb + k; }

}  // namespace

CIVector build_kappa7_state(const DetSpacePtr& space) {
  if (space->norb() != kOrb || space->nalpha() != kHalf || space->nbeta() != kHalf)
    throw InputError("the kappa=7 state lives in the (6,3,3) space");
  CIVector c(space);
  const std::uint64_t all = (std::uint64_t{1} << kOrb) - 1;
  const double a = 1.0 / std::sqrt(20.0);
  const auto& alpha = space->alpha();
  for (std::size_t ia = 0; ia < alpha.size(); ++ia) {
    const SpinString s = alpha[ia];
    int sum = 0;
    for (int p : s.orbitals()) sum += p;
    // Equal coefficients in the spin-interleaved ordering become this sign
    // once all α operators are moved to the left.
    const std::size_t ib = space->beta().address(SpinString{all & ~s.bits});
    c(ia, ib) = (sum & 1) ? -a : a;
  }
  return c;
}

CIVector build_kappa7_state() { return build_kappa7_state(make_space(kOrb, kHalf, kHalf)); }

Kappa7Reference kappa7_reference() {
  const int n = kOrb;
  const int n2 = n * n;
  Kappa7Reference r;
  r.one_rdm = 0.5 * ComplexMatrix::Identity(n, n);

  r.two_rdm_aa = {BlockKind::AA, n, kHalf, kHalf, ComplexMatrix::Zero(n2, n2)};
  r.two_rdm_ab = {BlockKind::AB, n, kHalf, kHalf, ComplexMatrix::Zero(n2, n2)};
  r.cumulant_aa = {BlockKind::AA, n, ComplexMatrix::Zero(n2, n2)};
  r.cumulant_ab = {BlockKind::AB, n, ComplexMatrix::Zero(n2, n2)};

  for (int i = 0; i < n; ++i) {
    r.cumulant_ab.t(idx(i, i), idx(i, i)) = 1.0 / 40.0 - 6.0 / 40.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      r.two_rdm_aa.t(idx(i, j), idx(i, j)) = 4.0 / 20.0;
      r.two_rdm_aa.t(idx(i, j), idx(j, i)) = -4.0 / 20.0;
      r.two_rdm_ab.t(idx(i, j), idx(i, j)) = 6.0 / 20.0;
      r.two_rdm_ab.t(idx(i, j), idx(j, i)) = -6.0 / 20.0;
      r.cumulant_aa.t(idx(i, j), idx(i, j)) = -1.0 / 40.0;
      r.cumulant_aa.t(idx(i, j), idx(j, i)) = 1.0 / 40.0;
      r.cumulant_ab.t(idx(i, j), idx(i, j)) = 1.0 / 40.0;
      r.cumulant_ab.t(idx(i, j), idx(j, i)) = -6.0 / 40.0;
    }
  }

  r.norm_aa = std::sqrt(15.0) / 20.0;
  r.norm_ab = std::sqrt(315.0) / 20.0;
  r.s_aa = std::log(15.0);
  r.s_ab = std::log(15.0);
  r.s1 = std::log(6.0);
  r.purity = 1.0 / 6.0;
  r.s_squared = 12.0;
  r.gap1 = 2.0 * r.s1 - r.s_aa - std::log(2.0 / (1.0 - r.purity));
  return r;
}

}  // namespace kickci
