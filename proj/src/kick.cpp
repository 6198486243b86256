#include "kickci/kick.hpp"

#include <cmath>
#include <stdexcept>

namespace kickci {

namespace {

void check_hermitian(const ComplexMatrix& s, const std::string& what) {
  if (s.rows() != s.cols()) throw InputError(what + " is not square");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InputError(what + " is not Hermitian");
}

// Expectation of a one-body operator in one spin channel: sum A_ij D(i,j).
cplx one_body_expectation(const ComplexMatrix& a, const OneRDM& d) {
  return a.cwiseProduct(d.m).sum();
}

// S~ in the natural-orbital basis. D(i,j) = <c†_i c_j> is the transpose of
// the usual density matrix, so the rotation uses conj(U).
ComplexMatrix rotate_to_naturals(const ComplexMatrix& s, const NaturalOrbitals& no) {
  return no.u.transpose() * s * no.u.conjugate();
}

double golden_rule_term(const ComplexMatrix& st, const RealVector& f) {
  double g = 0.0;
  for (Eigen::Index i = 0; i < st.rows(); ++i)
    for (Eigen::Index m = 0; m < st.cols(); ++m) g += std::norm(st(i, m)) * f(i) * (1.0 - f(m));
  return g;
}

int electron_count(const CIVector& c) { return c.space().alpha().nelec() + c.space().beta().nelec(); }

}  // namespace

KickSpec KickSpec::scaled(double lambda) const {
  KickSpec out = *this;
  for (auto& comp : out.components) comp.q *= lambda;
  out.s *= lambda;
  return out;
}

KickSpec build_kick(const std::vector<KickComponent>& components) {
  if (components.empty()) throw InputError("kick needs at least one component");
  const int n = components.front().d.norb();
  KickSpec k;
  k.components = components;
  k.s = ComplexMatrix::Zero(n, n);
  for (const auto& comp : components) {
    if (comp.d.norb() != n || comp.d.matrix.cols() != n)
      throw InputError("kick component '" + comp.d.label + "' has a different dimension");
    check_hermitian(comp.d.matrix, "kick component '" + comp.d.label + "'");
    if (!std::isfinite(comp.q)) throw InputError("kick strength is not finite");
    k.s -= comp.q * comp.d.matrix;
  }
  return k;
}

KickSpec kick_from_matrix(const ComplexMatrix& s) {
  check_hermitian(s, "kick matrix");
  KickSpec k;
  k.components.push_back({OneBodyOperator{"S", -s}, 1.0});
  k.s = s;
  return k;
}

KickMoments moments_and_cumulants(const CIVector& c, const KickSpec& k, Exec exec) {
  require_normalized(c);
  const OneBodyAction op(k.s, c.space_ptr(), exec);
  const CIVector v1 = op.apply(c);
  const CIVector v2 = op.apply(v1);
  KickMoments r;
  r.m1 = dot(c, v1);
  r.m2 = dot(c, v2);
  r.m3 = dot(v1, v2);
  r.s1 = r.m1;
  r.s2 = r.m2 - r.m1 * r.m1;
  r.s3 = r.m3 - 3.0 * r.m2 * r.m1 + 2.0 * r.m1 * r.m1 * r.m1;
  return r;
}

CIVector kicked_state(const CIVector& c, const KickSpec& k, double tol, Exec exec, Survival* info) {
  require_normalized(c);
  if (k.norb() != c.space().norb()) throw InputError("kick dimension does not match the CI space");
  const OneBodyAction op(k.s, c.space_ptr(), exec);

  // ||Ŝ|| <= N ||S||_2 <= N ||S||_1
  const double bound = electron_count(c) * k.s.cwiseAbs().colwise().sum().maxCoeff();
  const int steps = std::max(1, static_cast<int>(std::ceil(bound)));
  const cplx factor(0.0, 1.0 / steps);

  CIVector psi = c;
  CIVector term(c.space_ptr());
  CIVector next(c.space_ptr());
  int total_terms = 0;
  for (int step = 0; step < steps; ++step) {
    term = psi;
    int n = 1;
    for (;; ++n) {
      if (n > kMaxSeriesTerms)
        throw ConvergenceError("Taylor series for exp(iS) did not converge", term.norm(), n);
      op.apply(term, next);
      next *= factor / static_cast<double>(n);
      std::swap(term, next);
      psi += term;
      if (term.norm() < tol) break;
    }
    total_terms += n;
  }

  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw PhysicsError("kicked state lost unitarity: norm " + std::to_string(norm));
  if (info) {
    info->norm = norm;
    info->terms = total_terms;
    info->substeps = steps;
  }
  return psi;
}

Survival survival_exact(const CIVector& c, const KickSpec& k, double tol, Exec exec) {
  Survival s;
  const CIVector psi = kicked_state(c, k, tol, exec, &s);
  s.overlap = dot(c, psi);
  s.p_exact = std::norm(s.overlap);
  return s;
}

double contract_pair(const ComplexMatrix& s, const ComplexMatrix& t, int n) {
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx sij = s(i, j);
      if (sij == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += sij * s(k, l) * t(i * n + k, j * n + l);
    }
  return acc.real();
}

SecondOrder survival_second_order(const StateRDMs& r, const CorrelationMeasures& m,
                                  const NaturalOrbitals& no_alpha, const NaturalOrbitals& no_beta,
                                  const KickSpec& k) {
  const int n = k.norb();
  if (r.da.norb() != n || r.aa.norb != n || m.caa.norb != n || no_alpha.u.rows() != n ||
      no_beta.u.rows() != n)
    throw InputError("second-order survival: inconsistent dimensions");

  SecondOrder o;
  const ComplexMatrix s2 = k.s * k.s;
  o.mean_s = (one_body_expectation(k.s, r.da) + one_body_expectation(k.s, r.db)).real();
  o.one_body_sq = (one_body_expectation(s2, r.da) + one_body_expectation(s2, r.db)).real();
  o.sigma2_s = o.one_body_sq - o.mean_s * o.mean_s;

  const double pair = contract_pair(k.s, r.aa.t, n) + contract_pair(k.s, r.bb.t, n) +
                      2.0 * contract_pair(k.s, r.ab.t, n);
  o.s2_rdm = pair + o.sigma2_s;

  o.zz_aa = contract_pair(k.s, m.caa.t, n);
  o.zz_bb = contract_pair(k.s, m.cbb.t, n);
  o.zz_ab = contract_pair(k.s, m.cab.t, n);
  o.golden_rule = golden_rule_term(rotate_to_naturals(k.s, no_alpha), no_alpha.f) +
                  golden_rule_term(rotate_to_naturals(k.s, no_beta), no_beta.f);
  o.s2_no = 2.0 * (o.zz_aa + o.zz_bb + 2.0 * o.zz_ab) + o.golden_rule;
  return o;
}

SecondOrder survival_second_order(const StateRDMs& r, const KickSpec& k) {
  return survival_second_order(r, correlation_measures(r), natural_orbitals(r.da),
                               natural_orbitals(r.db), k);
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                                   double floor) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] <= 0.0 || !(y[i] >= floor)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ScalingResult scaling_probe(const CIVector& c, const KickSpec& k, const std::vector<double>& lambdas,
                            double tol, Exec exec) {
  for (double l : lambdas)
    if (!(l >= 0.0) || !std::isfinite(l)) throw InputError("scaling probe needs λ >= 0");
  const double s2 = moments_and_cumulants(c, k, exec).s2.real();
  ScalingResult out;
  std::vector<double> xs, ys;
  for (double l : lambdas) {
    ScalingRow row;
    row.lambda = l;
    row.p_exact = survival_exact(c, k.scaled(l), tol, exec).p_exact;
    row.p_order2 = 1.0 - l * l * s2;
    row.residual = std::abs(row.p_exact - row.p_order2);
    out.rows.push_back(row);
    xs.push_back(l);
    ys.push_back(row.residual);
  }
  out.slope = loglog_slope(xs, ys);
  return out;
}

KickReport kick_report(const CIVector& c, const StateRDMs& r, const CorrelationMeasures& m,
                       const KickSpec& k, const std::vector<double>& lambdas, Exec exec) {
  KickReport rep;
  rep.moments = moments_and_cumulants(c, k, exec);
  rep.order2 = survival_second_order(r, m, natural_orbitals(r.da), natural_orbitals(r.db), k);
  rep.survival = survival_exact(c, k, kSeriesTol, exec);
  const double s2 = rep.moments.s2.real();
  rep.p_order2 = 1.0 - s2;
  rep.p_exp = std::exp(-s2);
  if (!lambdas.empty()) rep.scan = scaling_probe(c, k, lambdas, kProbeSeriesTol, exec);
  return rep;
}

}  // namespace kickci
