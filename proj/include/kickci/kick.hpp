#pragma once

#include <optional>
#include <vector>

#include "kickci/hamiltonian.hpp"
#include "kickci/measures.hpp"

namespace kickci {

/// One field component: dipole-like operator d and its time-integrated
/// field strength q.
struct KickComponent {
  OneBodyOperator d;
  double q = 0.0;
};

/// Impulsive kick e^{iŜ} with S = -sum_a q_a d_a.
struct KickSpec {
  std::vector<KickComponent> components;
  ComplexMatrix s;

  int norb() const { return static_cast<int>(s.rows()); }
  KickSpec scaled(double lambda) const;
};

/// Throws InputError on an empty list, mismatched dimensions or a
/// non-Hermitian component.
KickSpec build_kick(const std::vector<KickComponent>& components);
/// Kick from an explicit S matrix (checked for Hermiticity).
KickSpec kick_from_matrix(const ComplexMatrix& s);

/// Moments <Ŝ^n> and cumulants, kept complex so the imaginary parts can be
/// reported.
struct KickMoments {
  cplx m1, m2, m3;
  cplx s1, s2, s3;
};

KickMoments moments_and_cumulants(const CIVector& c, const KickSpec& k, Exec exec = Exec::parallel);

struct Survival {
  cplx overlap;
  double p_exact = 0.0;
  double norm = 0.0;  ///< ||e^{iŜ} c||
  int terms = 0;      ///< Taylor terms summed over all substeps
  int substeps = 0;
};

inline constexpr double kSeriesTol = 1e-13;
inline constexpr int kMaxSeriesTerms = 200;

/// psi+ = e^{iŜ} c by Taylor summation of the one-body action. The exponent
/// is split into equal substeps when N ||S||_1 > 1. Throws ConvergenceError
/// when a substep needs more than 200 terms and PhysicsError when the norm
/// drifts from 1 by more than 1e-10.
CIVector kicked_state(const CIVector& c, const KickSpec& k, double tol = kSeriesTol,
                      Exec exec = Exec::parallel, Survival* info = nullptr);
Survival survival_exact(const CIVector& c, const KickSpec& k, double tol = kSeriesTol,
                        Exec exec = Exec::parallel);

struct SecondOrder {
  double s2_rdm = 0.0;    ///< <Ŝ⊗Ŝ> + sigma2_s
  double s2_no = 0.0;     ///< cumulant + natural-orbital form
  double sigma2_s = 0.0;  ///< <[Ŝ²]> - <[Ŝ]>²
  double zz_aa = 0.0;     ///< sum S S Δ, αα block
  double zz_bb = 0.0;
  double zz_ab = 0.0;
  double mean_s = 0.0;        ///< <[Ŝ]>
  double one_body_sq = 0.0;   ///< <[Ŝ²]>
  double golden_rule = 0.0;   ///< sum |S~_im|² f_i (1 - f_m), both spins
};

/// Both second-order routes from density matrices. The cumulants and
/// natural orbitals must come from the same state as `r`.
SecondOrder survival_second_order(const StateRDMs& r, const CorrelationMeasures& m,
                                  const NaturalOrbitals& no_alpha, const NaturalOrbitals& no_beta,
                                  const KickSpec& k);
SecondOrder survival_second_order(const StateRDMs& r, const KickSpec& k);

/// sum_ijkl S_ij S_kl T(i,k; j,l), real part.
double contract_pair(const ComplexMatrix& s, const ComplexMatrix& t, int norb);

struct ScalingRow {
  double lambda = 0.0;
  double p_exact = 0.0;
  double p_order2 = 0.0;
  double residual = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  std::optional<double> slope;  ///< empty when fewer than two points survive
};

inline constexpr double kResidualFloor = 1e-14;
/// Tighter series tolerance for the probe; residuals reach 1e-12 at λ = 1e-3.
inline constexpr double kProbeSeriesTol = 1e-16;

/// residual(λ) = |p_exact(λS) - (1 - λ² 𝔖₂(S))| and the least-squares slope
/// of log residual against log λ, skipping residuals below 1e-14.
ScalingResult scaling_probe(const CIVector& c, const KickSpec& k, const std::vector<double>& lambdas,
                            double tol = kProbeSeriesTol, Exec exec = Exec::parallel);

/// Slope of log y against log x over points with x > 0 and y >= floor.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                                   double floor = kResidualFloor);

struct KickReport {
  KickMoments moments;
  SecondOrder order2;
  Survival survival;
  double p_order2 = 0.0;
  double p_exp = 0.0;
  std::optional<ScalingResult> scan;
};

KickReport kick_report(const CIVector& c, const StateRDMs& r, const CorrelationMeasures& m,
                       const KickSpec& k, const std::vector<double>& lambdas = {},
                       Exec exec = Exec::parallel);

}  // namespace kickci
