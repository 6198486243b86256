#include "kickci/civector.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace kickci {

CIVector::CIVector(DetSpacePtr space)
    : space_(std::move(space)),
      amp_(AmplitudeGrid::Zero(space_->alpha().size(), space_->beta().size())) {}

CIVector::CIVector(DetSpacePtr space, AmplitudeGrid amp) : space_(std::move(space)), amp_(std::move(amp)) {
  if (amp_.rows() != static_cast<Eigen::Index>(space_->alpha().size()) ||
      amp_.cols() != static_cast<Eigen::Index>(space_->beta().size()))
    throw std::invalid_argument("amplitude grid shape does not match the determinant space");
}

CIVector CIVector::unit(DetSpacePtr space, std::size_t ia, std::size_t ib) {
  CIVector c(std::move(space));
  c(ia, ib) = 1.0;
  return c;
}

CIVector CIVector::random(DetSpacePtr space, std::uint64_t seed, bool complex_amplitudes) {
  CIVector c(std::move(space));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (Eigen::Index i = 0; i < c.amp_.size(); ++i) {
    const double re = gauss(rng);
    const double im = complex_amplitudes ? gauss(rng) : 0.0;
    c.amp_.data()[i] = {re, im};
  }
  c.normalize();
  return c;
}

void CIVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  amp_ /= n;
}

void CIVector::fix_phase() {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < amp_.size(); ++i) {
    const double a = std::abs(amp_.data()[i]);
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  const cplx phase = std::conj(amp_.data()[best]) / best_abs;
  amp_ *= phase;
  amp_.data()[best] = best_abs;
}

CIVector& CIVector::operator+=(const CIVector& o) {
  require_same_space(*this, o);
  amp_ += o.amp_;
  return *this;
}

CIVector& CIVector::operator-=(const CIVector& o) {
  require_same_space(*this, o);
  amp_ -= o.amp_;
  return *this;
}

CIVector& CIVector::operator*=(cplx s) {
  amp_ *= s;
  return *this;
}

cplx dot(const CIVector& a, const CIVector& b) {
  require_same_space(a, b);
  return a.flat().dot(b.flat());
}

void require_same_space(const CIVector& a, const CIVector& b) {
  if (!a.space_ptr() || !b.space_ptr() || !(a.space() == b.space()))
    throw std::invalid_argument("CI vectors live in different determinant spaces");
}

void require_normalized(const CIVector& c, double tol) {
  if (std::abs(c.norm() - 1.0) > tol)
    throw std::invalid_argument("CI vector is not normalized (norm " + std::to_string(c.norm()) + ")");
}

}  // namespace kickci
