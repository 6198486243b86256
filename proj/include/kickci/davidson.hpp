#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kickci/civector.hpp"
#include "kickci/hamiltonian.hpp"

namespace kickci {

struct SolveOptions {
  double tol = 1e-8;          ///< residual norm threshold
  int max_iter = 200;
  int max_subspace = 20;      ///< collapse when the basis reaches this size
  std::uint64_t seed = 7;     ///< start-vector perturbation seed
  int nroots = 1;
};

struct DavidsonResult {
  std::vector<double> energies;
  std::vector<ComplexVector> vectors;
  std::vector<double> residuals;
  int iterations = 0;
  bool converged = false;
};

/// Block Davidson for the lowest `opts.nroots` eigenpairs of a Hermitian
/// operator, with diagonal preconditioning. Never throws on non-convergence;
/// check `converged`.
DavidsonResult davidson(const std::function<void(const ComplexVector&, ComplexVector&)>& apply,
                        const RealVector& diagonal, const SolveOptions& opts);

struct GroundState {
  double energy = 0.0;
  CIVector state;
  double residual = 0.0;
  int iterations = 0;
};

/// Lowest eigenpair of H (core energy included). The returned vector is
/// normalized and phase-fixed. Throws ConvergenceError after max_iter.
GroundState solve_ground(const IntegralSet& ints, const DetSpacePtr& space,
                         const SolveOptions& opts = {});
GroundState solve_ground(const Hamiltonian& h, const SolveOptions& opts = {});

/// Lowest `opts.nroots` energies by Davidson.
std::vector<double> solve_lowest(const Hamiltonian& h, const SolveOptions& opts);

}  // namespace kickci
