#include <cmath>

#include "kickci/davidson.hpp"
#include "kickci/rdm.hpp"
#include "test_util.hpp"

using namespace kickci;

namespace {

// Brute-force spin-orbital reference. Spin orbital P = p + norb * spin;
// determinants are c†(α ascending) c†(β ascending) |0>, i.e. a 2n-bit mask.
struct BruteForce {
  int n;
  std::vector<std::uint64_t> masks;
  ComplexVector amp;

  explicit BruteForce(const CIVector& c) : n(c.space().norb()) {
    const auto& sp = c.space();
    for (std::size_t ia = 0; ia < sp.alpha().size(); ++ia)
      for (std::size_t ib = 0; ib < sp.beta().size(); ++ib)
        masks.push_back(sp.alpha()[ia].bits | (sp.beta()[ib].bits << n));
    amp = c.flat();
  }

  static bool annihilate(std::uint64_t& m, int p, int& sign) {
    if (!((m >> p) & 1)) return false;
    if (__builtin_popcountll(m & ((std::uint64_t{1} << p) - 1)) & 1) sign = -sign;
    m &= ~(std::uint64_t{1} << p);
    return true;
  }
  static bool create(std::uint64_t& m, int p, int& sign) {
    if ((m >> p) & 1) return false;
    if (__builtin_popcountll(m & ((std::uint64_t{1} << p) - 1)) & 1) sign = -sign;
    m |= std::uint64_t{1} << p;
    return true;
  }

  std::size_t find(std::uint64_t m) const {
    for (std::size_t k = 0; k < masks.size(); ++k)
      if (masks[k] == m) return k;
    return masks.size();
  }

  // <c†_P c†_Q c_S c_R>
  ComplexMatrix two() const {
    const int m = 2 * n;
    ComplexMatrix d = ComplexMatrix::Zero(m * m, m * m);
    for (std::size_t k = 0; k < masks.size(); ++k) {
      if (amp(k) == 0.0) continue;
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          std::uint64_t x = masks[k];
          int sign = 1;
          if (!annihilate(x, r, sign) || !annihilate(x, s, sign)) continue;
          for (int q = 0; q < m; ++q)
            for (int p = 0; p < m; ++p) {
              std::uint64_t y = x;
              int sg = sign;
              if (!create(y, q, sg) || !create(y, p, sg)) continue;
              const std::size_t t = find(y);
              if (t == masks.size()) continue;
              d(p * m + q, r * m + s) += std::conj(amp(t)) * amp(k) * static_cast<double>(sg);
            }
        }
    }
    return d;
  }
};

StateRDMs det_rdms(int norb, std::vector<int> a, std::vector<int> b) {
  const auto space = make_space(norb, static_cast<int>(a.size()), static_cast<int>(b.size()));
  const auto ia = space->alpha().address(SpinString::from_orbitals(a));
  const auto ib = space->beta().address(SpinString::from_orbitals(b));
  return compute_rdms(CIVector::unit(space, ia, ib));
}

void check_sum_rules(const StateRDMs& r) {
  const int na = r.da.nelec, nb = r.db.nelec;
  CHECK(std::abs(r.da.m.trace() - cplx(na)) <= 1e-10);
  CHECK(std::abs(r.db.m.trace() - cplx(nb)) <= 1e-10);
  CHECK(std::abs(r.aa.t.trace() - cplx(na * (na - 1.0))) <= 1e-10);
  CHECK(std::abs(r.bb.t.trace() - cplx(nb * (nb - 1.0))) <= 1e-10);
  CHECK(std::abs(r.ab.t.trace() - cplx(na * 1.0 * nb)) <= 1e-10);
  for (const TwoRDMBlock* b : {&r.aa, &r.bb, &r.ab}) {
    CHECK(testing::max_abs(b->t - b->t.adjoint()) <= 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(b->t, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
  }
  if (na >= 2) CHECK(testing::max_abs(trace_down(r.aa).m - r.da.m) <= 1e-10);
  if (nb >= 1) CHECK(testing::max_abs(trace_down(r.ab).m - r.da.m) <= 1e-10);
}

}  // namespace

TEST_CASE("RDMs match the brute-force spin-orbital oracle") {
  struct Case {
    int norb, na, nb;
  };
  std::uint64_t seed = 0;
  for (const Case& c : {Case{2, 1, 1}, Case{3, 2, 1}, Case{4, 2, 2}, Case{4, 3, 1}, Case{5, 2, 3}, Case{5, 0, 2}}) {
    CAPTURE(c.norb);
    CAPTURE(c.na);
    CAPTURE(c.nb);
    const auto space = make_space(c.norb, c.na, c.nb);
    const CIVector x = CIVector::random(space, ++seed, true);
    const StateRDMs r = compute_rdms(x);
    const ComplexMatrix ref = BruteForce(x).two();
    CHECK(testing::max_abs(spin_orbital_two_rdm(r) - ref) <= 1e-12);

    // Block extraction: AA = (α,α), AB = (α,β).
    const int n = c.norb, m = 2 * n;
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            err = std::max(err, std::abs(r.aa(i, k, j, l) - ref(i * m + k, j * m + l)));
            err = std::max(err, std::abs(r.bb(i, k, j, l) - ref((i + n) * m + k + n, (j + n) * m + l + n)));
            err = std::max(err, std::abs(r.ab(i, k, j, l) - ref(i * m + k + n, j * m + l + n)));
          }
    CHECK(err <= 1e-12);
    check_sum_rules(r);

    // 1-RDM from the oracle by partial trace of the full matrix.
    const ComplexMatrix d1 = spin_orbital_one_rdm(r);
    CHECK(testing::max_abs(d1.topLeftCorner(n, n) - r.da.m) == 0.0);
    CHECK(testing::max_abs(d1.topRightCorner(n, n)) == 0.0);
  }
}

TEST_CASE("single determinants") {
  const StateRDMs r = det_rdms(5, {0, 1, 2}, {0, 1, 2});
  ComplexMatrix proj = ComplexMatrix::Zero(5, 5);
  for (int i = 0; i < 3; ++i) proj(i, i) = 1.0;
  CHECK(testing::max_abs(r.da.m - proj) <= 1e-15);
  CHECK(testing::max_abs(r.db.m - proj) <= 1e-15);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k)
      for (int j = 0; j < 5; ++j)
        for (int l = 0; l < 5; ++l) {
          const double expect = (i == j && k == l) ? proj(i, i).real() * proj(k, k).real() : 0.0;
          CHECK(std::abs(r.ab(i, k, j, l) - expect) <= 1e-15);
        }
  CHECK(std::abs(spin_squared(r.ab)) <= 1e-12);
  check_sum_rules(r);
  CHECK(testing::max_abs(trace_down(r.ab).m - proj) <= 1e-15);

  const NaturalOrbitals no = natural_orbitals(r.da);
  CHECK(std::abs(no.f(0) - 1.0) <= 1e-12);
  CHECK(std::abs(no.f(4)) <= 1e-12);
  // Open-shell determinant with no shared orbitals: <S²> = Nβ + Sz² + Sz.
  CHECK(std::abs(spin_squared(det_rdms(4, {0, 1, 2}, {3}).ab) - 3.0) <= 1e-12);
  CHECK(std::abs(spin_squared(det_rdms(3, {0, 1}, {}).ab) - 2.0) <= 1e-12);
}

TEST_CASE("AA block antisymmetry and direct one_rdm") {
  const auto space = make_space(5, 3, 2);
  const CIVector x = CIVector::random(space, 13, true);
  const StateRDMs r = compute_rdms(x);
  double err = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k)
      for (int j = 0; j < 5; ++j)
        for (int l = 0; l < 5; ++l) {
          err = std::max(err, std::abs(r.aa(i, k, j, l) + r.aa(k, i, j, l)));
          err = std::max(err, std::abs(r.aa(i, k, j, l) + r.aa(i, k, l, j)));
        }
  CHECK(err <= 1e-14);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(r.da.m, Eigen::EigenvaluesOnly);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
  CHECK(eig.eigenvalues().maxCoeff() <= 1.0 + 1e-10);

  CIVector y = x;
  y *= 1.1;
  CHECK_THROWS(one_rdm(y));
  CHECK_THROWS(two_rdm_blocks(y));
  CHECK_THROWS_AS(trace_down(compute_rdms(CIVector::random(make_space(3, 1, 1), 2)).aa), InapplicableError);
}

TEST_CASE("serial and parallel RDM builds are bit-identical") {
  kernels::set_threads(4);
  const CIVector x = CIVector::random(make_space(7, 3, 4), 8, true);
  const TwoRDMBlocks s = two_rdm_blocks(x, Exec::serial), p = two_rdm_blocks(x, Exec::parallel);
  CHECK(s.aa.t == p.aa.t);
  CHECK(s.ab.t == p.ab.t);
  CHECK(two_rdm_bb(x, Exec::serial).t == two_rdm_bb(x, Exec::parallel).t);
}

TEST_CASE("ground-state properties") {
  const IntegralSet ints = testing::random_integrals(6, 6, 0, 4);
  const auto space = make_space(6, 3, 3);
  const GroundState g = solve_ground(ints, space);
  const StateRDMs r = compute_rdms(g.state);
  check_sum_rules(r);

  // Energy from the density matrices.
  const int n = 6;
  cplx e = ints.e_core();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) e += ints.h(p, q) * (r.da.m(p, q) + r.db.m(p, q));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          e += 0.5 * ints.eri(p, q, s, t) * (r.aa(p, s, q, t) + r.bb(p, s, q, t) + 2.0 * r.ab(p, s, q, t));
  CHECK(std::abs(e - g.energy) <= 1e-8);

  // Sz = 0 singlet-like ground state: β channel equals α channel.
  const GroundState hub = solve_ground(make_hubbard_model(6, 1.0, 4.0, true), space);
  const StateRDMs h = compute_rdms(hub.state);
  CHECK(testing::max_abs(h.da.m - h.db.m) <= 1e-8);  // solver tolerance
  CHECK(std::abs(spin_squared(h.ab)) <= 1e-9);
  check_sum_rules(h);
}

TEST_CASE("Hubbard dimer natural occupations (oracle)") {
  const GroundState g = solve_ground(make_hubbard_model(2, 1.0, 4.0, false), make_space(2, 1, 1));
  const StateRDMs r = compute_rdms(g.state);
  const NaturalOrbitals no = natural_orbitals(r.da);
  CHECK(std::abs(no.f(0) - 0.853553390593273) <= 1e-10);
  CHECK(std::abs(no.f(1) - 0.14644660940672588) <= 1e-10);
  CHECK(std::abs(no.f.sum() - 1.0) <= 1e-12);
  const ComplexMatrix rot = no.u.adjoint() * r.da.m * no.u;
  CHECK(testing::max_abs(rot - ComplexMatrix(no.f.cast<cplx>().asDiagonal())) <= 1e-10);
  CHECK(std::abs(spin_squared(r.ab)) <= 1e-10);
}

TEST_CASE("natural orbitals in a degenerate block are canonical") {
  const ComplexMatrix u = testing::random_unitary(4, 5);
  RealVector f(4);
  f << 0.5, 0.5, 0.5, 0.2;
  OneRDM a{Spin::alpha, 2, u * f.cast<cplx>().asDiagonal() * u.adjoint()};
  const NaturalOrbitals n1 = natural_orbitals(a);
  const NaturalOrbitals n2 = natural_orbitals(a);
  CHECK(n1.u == n2.u);
  CHECK((n1.u.adjoint() * n1.u - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(testing::max_abs(n1.u.adjoint() * a.m * n1.u - ComplexMatrix(n1.f.cast<cplx>().asDiagonal())) <= 1e-10);
}
