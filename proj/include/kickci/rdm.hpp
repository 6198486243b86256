#pragma once

#include "kickci/civector.hpp"
#include "kickci/kernels.hpp"

namespace kickci {

using kernels::Exec;

enum class Spin { alpha, beta };

/// One spin channel of the 1-RDM: m(i, j) = <c†_i c_j>.
struct OneRDM {
  Spin spin = Spin::alpha;
  int nelec = 0;  ///< electrons in this channel
  ComplexMatrix m;

  int norb() const { return static_cast<int>(m.rows()); }
};

enum class BlockKind { AA, BB, AB };

/// Spin-resolved 2-RDM block, stored as an norb^2 x norb^2 matrix.
///
/// Element (i,k; j,l) = <c†_i c†_k c_l c_j> with row (i,k) -> i*norb + k and
/// column (j,l) -> j*norb + l. For AB, i and j are α orbitals and k and l are
/// β orbitals.
struct TwoRDMBlock {
  BlockKind kind = BlockKind::AA;
  int norb = 0;
  int nalpha = 0;
  int nbeta = 0;
  ComplexMatrix t;

  cplx operator()(int i, int k, int j, int l) const { return t(i * norb + k, j * norb + l); }
  /// Trace the block must have: N(N-1) for same-spin, Nα·Nβ for AB.
  double expected_trace() const;
};

struct NaturalOrbitals {
  RealVector f;     ///< occupations, descending
  ComplexMatrix u;  ///< columns are natural orbitals in the working basis
};

/// Direct contraction from single-excitation lists. `c` must be normalized.
OneRDM one_rdm(const CIVector& c, Spin spin = Spin::alpha);

struct TwoRDMBlocks {
  TwoRDMBlock aa;
  TwoRDMBlock ab;
};

/// AA and AB blocks as Gram matrices of the annihilated vectors c c |psi>.
TwoRDMBlocks two_rdm_blocks(const CIVector& c, Exec exec = Exec::parallel);
/// The ββ block, same construction.
TwoRDMBlock two_rdm_bb(const CIVector& c, Exec exec = Exec::parallel);

/// Everything the correlation measures need from one state.
struct StateRDMs {
  OneRDM da;
  OneRDM db;
  TwoRDMBlock aa;
  TwoRDMBlock bb;
  TwoRDMBlock ab;
};

StateRDMs compute_rdms(const CIVector& c, Exec exec = Exec::parallel);

/// Descending eigen-decomposition. Within a degenerate cluster (gap below
/// 1e-10) the basis is made canonical: projector columns are Gram-Schmidt
/// orthogonalized in orbital order, each vector's largest-magnitude component
/// is made real positive, and vectors are sorted by the index of that
/// component.
NaturalOrbitals natural_orbitals(const OneRDM& d);

/// <S^2> = Nβ - sum_ij AB(j,i; i,j) + Sz^2 + Sz.
double spin_squared(const TwoRDMBlock& ab);

/// Partial trace back to the 1-RDM. AA: sum_k D(i,k; j,k) / (Nα-1);
/// AB: sum_k D(i,k; j,k) / Nβ. Throws InapplicableError when the
/// denominator vanishes.
OneRDM trace_down(const TwoRDMBlock& b);

/// Full spin-orbital 2-RDM (2n)^2 x (2n)^2, spin orbital P = p + n*spin.
ComplexMatrix spin_orbital_two_rdm(const StateRDMs& r);
/// Full spin-orbital 1-RDM, 2n x 2n.
ComplexMatrix spin_orbital_one_rdm(const StateRDMs& r);

}  // namespace kickci
