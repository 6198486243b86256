#include "kickci/davidson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace kickci {

namespace {

constexpr double kPreconditionerFloor = 1e-8;
constexpr double kNewDirectionMin = 1e-10;

// Orthonormalizes v against the first `m` columns of basis (two passes).
// Returns false when nothing independent is left.
bool orthonormalize(const ComplexMatrix& basis, Eigen::Index m, ComplexVector& v) {
  const double start = v.norm();
  if (start == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass)
    if (m > 0) v -= basis.leftCols(m) * (basis.leftCols(m).adjoint() * v);
  const double n = v.norm();
  if (n < kNewDirectionMin * start || n == 0.0) return false;
  v /= n;
  return true;
}

}  // namespace

DavidsonResult davidson(const std::function<void(const ComplexVector&, ComplexVector&)>& apply,
                        const RealVector& diagonal, const SolveOptions& opts) {
  if (opts.tol <= 0.0) throw std::invalid_argument("SolveOptions.tol must be positive");
  if (opts.max_subspace < 2) throw std::invalid_argument("SolveOptions.max_subspace must be >= 2");
  const Eigen::Index dim = diagonal.size();
  if (dim == 0) throw std::invalid_argument("davidson: empty space");
  const int nroots = std::min<int>(opts.nroots, static_cast<int>(dim));
  const Eigen::Index max_sub =
      std::min<Eigen::Index>(std::max(opts.max_subspace, 2 * nroots + 1), dim);

  DavidsonResult result;

  // Start: unit vectors on the lowest diagonal elements, slightly perturbed
  // by a seeded random vector so no symmetry sector is excluded.
  std::vector<Eigen::Index> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return diagonal(a) < diagonal(b); });
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  ComplexMatrix V(dim, max_sub), AV(dim, max_sub);
  Eigen::Index m = 0;
  for (int r = 0; r < nroots; ++r) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(order[r]) = 1.0;
    if (dim > 1)
      for (Eigen::Index i = 0; i < dim; ++i) v(i) += 1e-3 * uni(rng);
    if (!orthonormalize(V, m, v)) continue;
    V.col(m) = v;
    ComplexVector av(dim);
    apply(v, av);
    AV.col(m) = av;
    ++m;
  }

  std::vector<ComplexVector> ritz(nroots), residual(nroots);
  std::vector<double> theta(nroots), rnorm(nroots);
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    result.iterations = iter;
    ComplexMatrix proj = V.leftCols(m).adjoint() * AV.leftCols(m);
    proj = 0.5 * (proj + proj.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(proj);
    const int k = std::min<int>(nroots, static_cast<int>(m));
    bool all_converged = k == nroots;
    for (int r = 0; r < k; ++r) {
      theta[r] = eig.eigenvalues()(r);
      ritz[r] = V.leftCols(m) * eig.eigenvectors().col(r);
      residual[r] = AV.leftCols(m) * eig.eigenvectors().col(r) - theta[r] * ritz[r];
      rnorm[r] = residual[r].norm();
      if (rnorm[r] > opts.tol) all_converged = false;
    }
    if (all_converged || m == dim) {
      result.converged = all_converged || m == dim;
      break;
    }

    if (m + k > max_sub) {
      // Collapse onto the current Ritz vectors.
      ComplexMatrix keep_v(dim, k), keep_av(dim, k);
      for (int r = 0; r < k; ++r) {
        keep_v.col(r) = ritz[r];
        keep_av.col(r) = AV.leftCols(m) * eig.eigenvectors().col(r);
      }
      V.leftCols(k) = keep_v;
      AV.leftCols(k) = keep_av;
      m = k;
    }

    Eigen::Index added = 0;
    for (int r = 0; r < k; ++r) {
      if (rnorm[r] <= opts.tol) continue;
      ComplexVector t(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        double denom = theta[r] - diagonal(i);
        if (std::abs(denom) < kPreconditionerFloor) denom = denom < 0 ? -kPreconditionerFloor : kPreconditionerFloor;
        t(i) = residual[r](i) / denom;
      }
      if (!orthonormalize(V, m, t)) {
        t = residual[r];
        if (!orthonormalize(V, m, t)) continue;
      }
      V.col(m) = t;
      ComplexVector at(dim);
      apply(t, at);
      AV.col(m) = at;
      ++m;
      ++added;
    }
    if (added == 0) {
      // Basis exhausted numerically; accept what we have.
      result.converged = std::all_of(rnorm.begin(), rnorm.begin() + k,
                                     [&](double x) { return x <= opts.tol; });
      break;
    }
  }

  const int k = std::min<int>(nroots, static_cast<int>(m));
  for (int r = 0; r < k; ++r) {
    result.energies.push_back(theta[r]);
    result.vectors.push_back(ritz[r]);
    result.residuals.push_back(rnorm[r]);
  }
  return result;
}

GroundState solve_ground(const IntegralSet& ints, const DetSpacePtr& space, const SolveOptions& opts) {
  return solve_ground(Hamiltonian(ints, space), opts);
}

GroundState solve_ground(const Hamiltonian& h, const SolveOptions& opts) {
  const DetSpacePtr& space = h.space();
  if (space->dimension() == 0) throw std::invalid_argument("solve_ground: empty space");
  SolveOptions one = opts;
  one.nroots = 1;
  CIVector in(space), out(space);
  auto apply = [&](const ComplexVector& x, ComplexVector& y) {
    in.flat() = x;
    h.apply(in, out);
    y = out.flat();
  };
  DavidsonResult res = davidson(apply, h.diagonal(), one);
  if (!res.converged)
    throw ConvergenceError("Davidson did not converge within " + std::to_string(opts.max_iter) +
                               " iterations",
                           res.residuals.at(0), res.iterations);
  GroundState gs{res.energies[0], CIVector(space), res.residuals[0], res.iterations};
  gs.state.flat() = res.vectors[0];
  gs.state.normalize();
  gs.state.fix_phase();
  return gs;
}

std::vector<double> solve_lowest(const Hamiltonian& h, const SolveOptions& opts) {
  CIVector in(h.space()), out(h.space());
  auto apply = [&](const ComplexVector& x, ComplexVector& y) {
    in.flat() = x;
    h.apply(in, out);
    y = out.flat();
  };
  DavidsonResult res = davidson(apply, h.diagonal(), opts);
  if (!res.converged)
    throw ConvergenceError("Davidson did not converge", *std::max_element(res.residuals.begin(), res.residuals.end()),
                           res.iterations);
  return res.energies;
}

}  // namespace kickci
