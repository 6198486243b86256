#pragma once

#include "kickci/civector.hpp"
#include "kickci/integrals.hpp"
#include "kickci/kernels.hpp"

namespace kickci {

using kernels::Exec;

/// Hamiltonian bound to a determinant space, with the string-channel tables
/// used by repeated sigma builds.
class Hamiltonian {
 public:
  Hamiltonian(const IntegralSet& ints, DetSpacePtr space, Exec exec = Exec::parallel);

  const DetSpacePtr& space() const { return space_; }
  const IntegralSet& integrals() const { return ints_; }

  CIVector apply(const CIVector& c) const;
  void apply(const CIVector& c, CIVector& out) const;

  /// Diagonal elements <D|H|D> in flattened determinant order.
  RealVector diagonal() const;

  Exec exec() const { return exec_; }

 private:
  IntegralSet ints_;
  DetSpacePtr space_;
  kernels::SigmaTables tables_;
  Exec exec_;
};

/// H * c, with H including the core energy.
CIVector sigma(const IntegralSet& ints, const DetSpacePtr& space, const CIVector& c);

inline constexpr std::size_t kDenseCap = 5000;

/// Explicit matrix built determinant by determinant from second-quantized
/// operator strings; independent of the string-driven sigma path.
RealMatrix dense_hamiltonian(const IntegralSet& ints, const DetSpace& space,
                             std::size_t cap = kDenseCap);

/// Spin-summed one-body operator bound to a space.
class OneBodyAction {
 public:
  OneBodyAction(const ComplexMatrix& a, DetSpacePtr space, Exec exec = Exec::parallel);

  CIVector apply(const CIVector& c) const;
  void apply(const CIVector& c, CIVector& out) const;

 private:
  DetSpacePtr space_;
  kernels::ComplexStringOperator alpha_;
  kernels::ComplexStringOperator beta_;
  Exec exec_;
};

/// (sum_pq A_pq sum_sigma c†_{p sigma} c_{q sigma}) c.
CIVector apply_one_body(const OneBodyOperator& a, const CIVector& c);
CIVector apply_one_body(const ComplexMatrix& a, const CIVector& c);

/// Dense matrix of the spin-summed one-body operator, built like
/// dense_hamiltonian (test oracle).
ComplexMatrix dense_one_body(const ComplexMatrix& a, const DetSpace& space,
                             std::size_t cap = kDenseCap);

}  // namespace kickci
