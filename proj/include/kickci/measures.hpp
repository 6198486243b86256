#pragma once

#include <optional>

#include "kickci/rdm.hpp"

namespace kickci {

/// Connected part of a 2-RDM block, same index convention as TwoRDMBlock.
struct CumulantBlock {
  BlockKind kind = BlockKind::AA;
  int norb = 0;
  ComplexMatrix t;

  cplx operator()(int i, int k, int j, int l) const { return t(i * norb + k, j * norb + l); }
};

struct CumulantBlocks {
  CumulantBlock aa;
  CumulantBlock ab;
};

/// ²Δ = ½ ²D − ¹D∧¹D. The AB block has no exchange term (¹D is spin-diagonal).
/// Uses `d1` for both channels, which assumes a spin-symmetric state.
CumulantBlocks cumulant_blocks(const OneRDM& d1, const TwoRDMBlock& aa, const TwoRDMBlock& ab);

/// ½ D(i,k;j,l) − ½ (d_ij d_kl − d_il d_kj) for an AA or BB block.
CumulantBlock same_spin_cumulant(const OneRDM& d, const TwoRDMBlock& block);
/// ½ D(i,k̄;j,l̄) − ½ dα_ij dβ_kl.
CumulantBlock opposite_spin_cumulant(const OneRDM& da, const OneRDM& db, const TwoRDMBlock& ab);

double frobenius_norm(const CumulantBlock& b);

/// Eigenvalue floor below which w ln w is dropped.
inline constexpr double kEntropyFloor = 1e-14;

/// -sum w ln w over the eigenvalues of a unit-trace Hermitian matrix.
/// Throws PhysicsError for eigenvalues below -1e-8.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Entropy of the block normalized to unit trace (N(N-1) or NαNβ).
/// Throws InapplicableError when that trace is zero.
double pair_entropy(const TwoRDMBlock& b);

struct OneBodyEntropy {
  double s1 = 0.0;
  double purity = 0.0;
};

/// Entropy and purity of ¹D / N for one channel.
OneBodyEntropy one_body_entropy(const OneRDM& d);

struct CarlenLiebGaps {
  double gap1 = 0.0;  ///< 2 S1 − S12 − ln(2 / (1 − Tr ρ1²))
  double gap2 = 0.0;  ///< 2 S1 − S12 − ln(2 / (1 − e^{−S1}))
};

/// Slack in the two pair-entropy bounds. Throws InapplicableError in the
/// purity -> 1 limit (a one-electron channel) where the bounds diverge.
CarlenLiebGaps carlen_lieb_check(double s1, double s12, double purity);

/// Pair entropies of a single determinant: ln(N(N-1)/2) and ln(Nα Nβ).
double reference_entropy_aa(int n);
double reference_entropy_ab(int na, int nb);

/// Entropy-type measures for one state. Optional fields are empty when the
/// measure is undefined (e.g. everything AA-based for Nα < 2).
struct EntropyReport {
  double s1 = 0.0;
  double purity = 0.0;
  std::optional<double> s_aa, s_ab;
  std::optional<double> s0_aa, s0_ab;
  std::optional<double> gap1, gap2;
  /// s_aa − 2 ln Nα, reported without a verdict.
  std::optional<double> floor_aa;

  // The same bounds applied to the full spin-orbital density matrices.
  double s1_so = 0.0;
  double purity_so = 0.0;
  std::optional<double> s_so, s0_so;
  std::optional<double> gap1_so, gap2_so;
};

EntropyReport entropy_report(const StateRDMs& r);

struct CorrelationMeasures {
  CumulantBlock caa;
  CumulantBlock cbb;
  CumulantBlock cab;
  double norm_aa = 0.0;
  double norm_ab = 0.0;
  EntropyReport entropies;
};

CorrelationMeasures correlation_measures(const StateRDMs& r);

}  // namespace kickci
