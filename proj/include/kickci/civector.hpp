#pragma once

#include <cstdint>

#include "kickci/common.hpp"
#include "kickci/detspace.hpp"

namespace kickci {

/// Row-major α × β amplitude grid.
using AmplitudeGrid = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A many-body state over a determinant space.
class CIVector {
 public:
  CIVector() = default;
  explicit CIVector(DetSpacePtr space);
  CIVector(DetSpacePtr space, AmplitudeGrid amp);

  static CIVector unit(DetSpacePtr space, std::size_t ia, std::size_t ib);
  /// Deterministic pseudo-random normalized vector (complex when requested).
  static CIVector random(DetSpacePtr space, std::uint64_t seed, bool complex_amplitudes = false);

  const DetSpace& space() const { return *space_; }
  const DetSpacePtr& space_ptr() const { return space_; }
  AmplitudeGrid& amp() { return amp_; }
  const AmplitudeGrid& amp() const { return amp_; }
  cplx& operator()(std::size_t ia, std::size_t ib) { return amp_(ia, ib); }
  cplx operator()(std::size_t ia, std::size_t ib) const { return amp_(ia, ib); }

  std::size_t size() const { return static_cast<std::size_t>(amp_.size()); }
  double norm() const { return amp_.norm(); }
  void normalize();
  /// Rotates the global phase so the largest-magnitude amplitude (first in
  /// flattened order on ties) is real positive.
  void fix_phase();

  Eigen::Map<ComplexVector> flat() { return {amp_.data(), amp_.size()}; }
  Eigen::Map<const ComplexVector> flat() const { return {amp_.data(), amp_.size()}; }

  CIVector& operator+=(const CIVector& o);
  CIVector& operator-=(const CIVector& o);
  CIVector& operator*=(cplx s);

 private:
  DetSpacePtr space_;
  AmplitudeGrid amp_;
};

/// <a|b>, antilinear in a.
cplx dot(const CIVector& a, const CIVector& b);

void require_same_space(const CIVector& a, const CIVector& b);

/// Throws std::invalid_argument unless ||c|| = 1 within tol.
void require_normalized(const CIVector& c, double tol = 1e-8);

}  // namespace kickci
