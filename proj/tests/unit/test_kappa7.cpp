#include <cmath>

#include "kickci/kappa7.hpp"
#include "kickci/kick.hpp"
#include "test_util.hpp"

using namespace kickci;

TEST_CASE("the kappa=7 state") {
  const CIVector c = build_kappa7_state();
  CHECK(std::abs(c.norm() - 1.0) <= 1e-14);
  CHECK((c.flat().array() != cplx(0.0)).count() == 20);
  CHECK_THROWS_AS(build_kappa7_state(make_space(6, 3, 2)), InputError);
  CHECK_THROWS_AS(build_kappa7_state(make_space(5, 3, 3)), InputError);

  const StateRDMs r = compute_rdms(c);
  CHECK(std::abs(spin_squared(r.ab) - 12.0) <= 1e-10);
  CHECK(testing::max_abs(r.da.m - 0.5 * ComplexMatrix::Identity(6, 6)) <= 1e-10);
  CHECK(testing::max_abs(r.db.m - 0.5 * ComplexMatrix::Identity(6, 6)) <= 1e-10);
  CHECK(testing::max_abs(trace_down(r.aa).m - 0.5 * ComplexMatrix::Identity(6, 6)) <= 1e-10);
  CHECK(testing::max_abs(trace_down(r.ab).m - 0.5 * ComplexMatrix::Identity(6, 6)) <= 1e-10);
  const NaturalOrbitals no = natural_orbitals(r.da);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(no.f(i) - 0.5) <= 1e-12);
}

TEST_CASE("pipeline reproduces the closed-form reference") {
  const Kappa7Reference ref = kappa7_reference();
  const StateRDMs r = compute_rdms(build_kappa7_state());
  const CorrelationMeasures m = correlation_measures(r);
  CHECK(testing::max_abs(r.da.m - ref.one_rdm) <= 1e-10);
  CHECK(testing::max_abs(r.aa.t - ref.two_rdm_aa.t) <= 1e-10);
  CHECK(testing::max_abs(r.ab.t - ref.two_rdm_ab.t) <= 1e-10);
  CHECK(testing::max_abs(m.caa.t - ref.cumulant_aa.t) <= 1e-10);
  CHECK(testing::max_abs(m.cab.t - ref.cumulant_ab.t) <= 1e-10);
  CHECK(std::abs(m.norm_aa - ref.norm_aa) <= 1e-10);
  CHECK(std::abs(m.norm_ab - ref.norm_ab) <= 1e-10);
  CHECK(std::abs(*m.entropies.s_aa - ref.s_aa) <= 1e-10);
  CHECK(std::abs(*m.entropies.s_ab - ref.s_ab) <= 1e-10);
  CHECK(std::abs(m.entropies.s1 - ref.s1) <= 1e-10);
  CHECK(std::abs(m.entropies.purity - ref.purity) <= 1e-10);
  CHECK(std::abs(spin_squared(r.ab) - ref.s_squared) <= 1e-10);
  CHECK(std::abs(*m.entropies.gap1 - ref.gap1) <= 1e-10);
  CHECK(*m.entropies.gap2 >= -1e-10);
}

TEST_CASE("reference values and internal consistency") {
  const Kappa7Reference ref = kappa7_reference();
  CHECK(std::abs(ref.norm_aa - 0.1936492) <= 1e-7);
  CHECK(std::abs(ref.norm_ab - 0.8874119) <= 1e-7);
  CHECK(std::abs(ref.s_aa - 2.7080502) <= 1e-7);
  CHECK(std::abs(ref.s1 - 1.7917595) <= 1e-7);
  CHECK(std::abs(ref.gap1) <= 1e-14);
  CHECK(std::abs(2 * std::log(6.0) - std::log(15.0) - std::log(12.0 / 5.0)) <= 1e-14);

  CHECK(testing::max_abs(trace_down(ref.two_rdm_aa).m - ref.one_rdm) <= 1e-14);
  CHECK(testing::max_abs(trace_down(ref.two_rdm_ab).m - ref.one_rdm) <= 1e-14);
  CHECK(std::abs(frobenius_norm(ref.cumulant_aa) - ref.norm_aa) <= 1e-14);
  CHECK(std::abs(frobenius_norm(ref.cumulant_ab) - ref.norm_ab) <= 1e-14);
  const OneRDM d{Spin::alpha, 3, ref.one_rdm};
  CHECK(testing::max_abs(same_spin_cumulant(d, ref.two_rdm_aa).t - ref.cumulant_aa.t) <= 1e-15);
  CHECK(testing::max_abs(opposite_spin_cumulant(d, d, ref.two_rdm_ab).t - ref.cumulant_ab.t) <= 1e-15);
  CHECK(std::abs(spin_squared(ref.two_rdm_ab) - 12.0) <= 1e-14);

  // Normalized AB spectrum: fifteen eigenvalues 1/15.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(ref.two_rdm_ab.t / 9.0, Eigen::EigenvaluesOnly);
  int count = 0;
  for (double w : eig.eigenvalues())
    if (std::abs(w - 1.0 / 15.0) <= 1e-12) ++count;
    else CHECK(std::abs(w) <= 1e-12);
  CHECK(count == 15);
}

TEST_CASE("connected contractions of the kappa=7 state") {
  const StateRDMs r = compute_rdms(build_kappa7_state());
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const ComplexMatrix s = testing::random_hermitian(6, seed);
    const SecondOrder o = survival_second_order(r, kick_from_matrix(s));
    double aa = 0.0, ab = 0.0;
    for (int i = 0; i < 6; ++i) {
      ab -= 5.0 / 40.0 * std::norm(s(i, i));
      for (int k = 0; k < 6; ++k) {
        if (i == k) continue;
        aa += (std::norm(s(i, k)) - (s(i, i) * s(k, k)).real()) / 40.0;
        ab += (s(i, i) * s(k, k)).real() / 40.0 - 6.0 / 40.0 * std::norm(s(i, k));
      }
    }
    CHECK(std::abs(o.zz_aa - aa) <= 1e-12);
    CHECK(std::abs(o.zz_bb - aa) <= 1e-12);
    CHECK(std::abs(o.zz_ab - ab) <= 1e-12);
    CHECK(std::abs(o.s2_rdm - o.s2_no) <= 1e-10);
  }
  // A kick without transition moments that treats every 1s orbital alike
  // leaves the state unchanged up to phase.
  const SecondOrder flat = survival_second_order(r, kick_from_matrix(0.4 * ComplexMatrix::Identity(6, 6)));
  CHECK(std::abs(flat.s2_rdm) <= 1e-12);
  CHECK(std::abs(flat.s2_no) <= 1e-12);
}
