#pragma once

#include "kickci/measures.hpp"

namespace kickci {

/// Maximal-spin (κ = 7) member of the dissociated six-hydrogen manifold:
/// 20 determinants with each orbital singly occupied, the β string the
/// complement of the α string. Throws InputError unless the space is (6,3,3).
CIVector build_kappa7_state(const DetSpacePtr& space);
CIVector build_kappa7_state();

/// Closed-form density matrices and measures of the κ = 7 state.
struct Kappa7Reference {
  ComplexMatrix one_rdm;  ///< ½ I₆
  TwoRDMBlock two_rdm_aa;
  TwoRDMBlock two_rdm_ab;
  CumulantBlock cumulant_aa;
  CumulantBlock cumulant_ab;
  double norm_aa = 0.0;  ///< √15 / 20
  double norm_ab = 0.0;  ///< √315 / 20
  double s_aa = 0.0;     ///< ln 15
  double s_ab = 0.0;     ///< ln 15
  double s1 = 0.0;       ///< ln 6
  double purity = 0.0;   ///< 1/6
  double s_squared = 0.0;
  double gap1 = 0.0;
};

Kappa7Reference kappa7_reference();

}  // namespace kickci
