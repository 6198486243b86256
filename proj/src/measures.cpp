#include "kickci/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace kickci {

namespace {

constexpr double kNegativeEigenTol = 1e-8;

void check_shapes(const OneRDM& d, const TwoRDMBlock& b) {
  if (d.norb() != b.norb) throw std::invalid_argument("cumulant: dimension mismatch");
}

}  // namespace

CumulantBlock same_spin_cumulant(const OneRDM& d, const TwoRDMBlock& block) {
  check_shapes(d, block);
  const int n = block.norb;
  CumulantBlock c{block.kind, n, 0.5 * block.t};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          c.t(i * n + k, j * n + l) -= 0.5 * (d.m(i, j) * d.m(k, l) - d.m(i, l) * d.m(k, j));
  return c;
}

CumulantBlock opposite_spin_cumulant(const OneRDM& da, const OneRDM& db, const TwoRDMBlock& ab) {
  check_shapes(da, ab);
  check_shapes(db, ab);
  const int n = ab.norb;
  CumulantBlock c{BlockKind::AB, n, 0.5 * ab.t};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) c.t(i * n + k, j * n + l) -= 0.5 * da.m(i, j) * db.m(k, l);
  return c;
}

CumulantBlocks cumulant_blocks(const OneRDM& d1, const TwoRDMBlock& aa, const TwoRDMBlock& ab) {
  return {same_spin_cumulant(d1, aa), opposite_spin_cumulant(d1, d1, ab)};
}

double frobenius_norm(const CumulantBlock& b) { return b.t.norm(); }

double von_neumann_entropy(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (rho + rho.adjoint()),
                                                   Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double w : eig.eigenvalues()) {
    if (w < -kNegativeEigenTol)
      throw PhysicsError("density matrix has eigenvalue " + std::to_string(w));
    if (w > kEntropyFloor) s -= w * std::log(w);
  }
  return s;
}

double pair_entropy(const TwoRDMBlock& b) {
  const double trace = b.expected_trace();
  if (trace <= 0.0) throw InapplicableError("pair entropy of an empty 2-RDM block");
  return von_neumann_entropy(b.t / trace);
}

OneBodyEntropy one_body_entropy(const OneRDM& d) {
  if (d.nelec <= 0) throw InapplicableError("one-body entropy of an empty channel");
  const ComplexMatrix rho = d.m / static_cast<double>(d.nelec);
  OneBodyEntropy e;
  e.s1 = von_neumann_entropy(rho);
  e.purity = (rho * rho).trace().real();
  return e;
}

CarlenLiebGaps carlen_lieb_check(double s1, double s12, double purity) {
  if (purity >= 1.0 - 1e-14)
    throw InapplicableError("Carlen-Lieb bounds diverge at unit purity (single-orbital channel)");
  CarlenLiebGaps g;
  g.gap1 = 2.0 * s1 - s12 - std::log(2.0 / (1.0 - purity));
  g.gap2 = 2.0 * s1 - s12 - std::log(2.0 / (1.0 - std::exp(-s1)));
  return g;
}

double reference_entropy_aa(int n) {
  if (n < 2) throw InapplicableError("AA reference entropy needs two same-spin electrons");
  return std::log(0.5 * n * (n - 1));
}

double reference_entropy_ab(int na, int nb) {
  if (na < 1 || nb < 1) throw InapplicableError("AB reference entropy needs both spins");
  return std::log(static_cast<double>(na) * nb);
}

EntropyReport entropy_report(const StateRDMs& r) {
  EntropyReport e;
  const int na = r.da.nelec, nb = r.db.nelec;
  if (na > 0) {
    const OneBodyEntropy ob = one_body_entropy(r.da);
    e.s1 = ob.s1;
    e.purity = ob.purity;
  }
  if (na >= 2) {
    e.s_aa = pair_entropy(r.aa);
    e.s0_aa = reference_entropy_aa(na);
    e.floor_aa = *e.s_aa - 2.0 * std::log(static_cast<double>(na));
    if (e.purity < 1.0 - 1e-14) {
      const CarlenLiebGaps g = carlen_lieb_check(e.s1, *e.s_aa, e.purity);
      e.gap1 = g.gap1;
      e.gap2 = g.gap2;
    }
  }
  if (na >= 1 && nb >= 1) {
    e.s_ab = pair_entropy(r.ab);
    e.s0_ab = reference_entropy_ab(na, nb);
  }

  const int ntot = na + nb;
  if (ntot > 0) {
    const ComplexMatrix rho1 = spin_orbital_one_rdm(r) / static_cast<double>(ntot);
    e.s1_so = von_neumann_entropy(rho1);
    e.purity_so = (rho1 * rho1).trace().real();
  }
  if (ntot >= 2) {
    e.s_so = von_neumann_entropy(spin_orbital_two_rdm(r) / (static_cast<double>(ntot) * (ntot - 1)));
    e.s0_so = reference_entropy_aa(ntot);
    if (e.purity_so < 1.0 - 1e-14) {
      const CarlenLiebGaps g = carlen_lieb_check(e.s1_so, *e.s_so, e.purity_so);
      e.gap1_so = g.gap1;
      e.gap2_so = g.gap2;
    }
  }
  return e;
}

CorrelationMeasures correlation_measures(const StateRDMs& r) {
  CorrelationMeasures m;
  m.caa = same_spin_cumulant(r.da, r.aa);
  m.cbb = same_spin_cumulant(r.db, r.bb);
  m.cab = opposite_spin_cumulant(r.da, r.db, r.ab);
  m.norm_aa = frobenius_norm(m.caa);
  m.norm_ab = frobenius_norm(m.cab);
  m.entropies = entropy_report(r);
  return m;
}

}  // namespace kickci
