#include "kickci/hamiltonian.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace kickci {

namespace {

// Determinant as a spin-orbital bit pattern: α orbitals at bits [0, n),
// β orbitals at bits [n, 2n). Operators act with the usual phase
// (-1)^(occupied spin orbitals below the target).
struct SpinOrbitalDet {
  std::uint64_t alpha;
  std::uint64_t beta;
  int sign = 1;

  std::uint64_t& channel(int spin) { return spin == 0 ? alpha : beta; }

  int count_below(int p, int spin) const {
    const std::uint64_t below = (std::uint64_t{1} << p) - 1;
    return spin == 0 ? __builtin_popcountll(alpha & below)
                     : __builtin_popcountll(alpha) + __builtin_popcountll(beta & below);
  }

  bool annihilate(int p, int spin) {
    if (!((channel(spin) >> p) & 1u)) return false;
    if (count_below(p, spin) & 1) sign = -sign;
    channel(spin) &= ~(std::uint64_t{1} << p);
    return true;
  }

  bool create(int p, int spin) {
    if ((channel(spin) >> p) & 1u) return false;
    if (count_below(p, spin) & 1) sign = -sign;
    channel(spin) |= std::uint64_t{1} << p;
    return true;
  }
};

void check_cap(const DetSpace& space, std::size_t cap) {
  if (space.dimension() > cap)
    throw std::invalid_argument("dense matrix requested for dimension " +
                                std::to_string(space.dimension()) + " above cap " +
                                std::to_string(cap));
}

std::size_t det_index(const DetSpace& space, const SpinOrbitalDet& d) {
  return space.alpha().address(SpinString{d.alpha}) * space.beta().size() +
         space.beta().address(SpinString{d.beta});
}

}  // namespace

Hamiltonian::Hamiltonian(const IntegralSet& ints, DetSpacePtr space, Exec exec)
    : ints_(ints), space_(std::move(space)), exec_(exec) {
  if (space_->norb() != ints.norb())
    throw std::invalid_argument("Hamiltonian and determinant space disagree on norb");
  tables_.space = space_.get();
  tables_.eri = ints.dense_eri();
  tables_.e_core = ints.e_core();
  tables_.alpha = kernels::build_same_spin_operator(space_->alpha(), ints.h(), tables_.eri, exec);
  tables_.beta = kernels::build_same_spin_operator(space_->beta(), ints.h(), tables_.eri, exec);
}

CIVector Hamiltonian::apply(const CIVector& c) const {
  CIVector out(space_);
  apply(c, out);
  return out;
}

void Hamiltonian::apply(const CIVector& c, CIVector& out) const {
  if (!(c.space() == *space_)) throw std::invalid_argument("sigma: dimension mismatch");
  if (!out.space_ptr() || !(out.space() == *space_)) out = CIVector(space_);
  kernels::sigma(tables_, c.amp(), out.amp(), exec_);
}

RealVector Hamiltonian::diagonal() const {
  const DetSpace& s = *space_;
  RealVector diag(static_cast<Eigen::Index>(s.dimension()));
  auto same_spin = [&](const std::vector<int>& occ) {
    double e = 0.0;
    for (int p : occ) {
      e += ints_.h(p, p);
      for (int q : occ) e += 0.5 * (ints_.eri(p, p, q, q) - ints_.eri(p, q, q, p));
    }
    return e;
  };
  std::vector<double> ea(s.alpha().size()), eb(s.beta().size());
  std::vector<std::vector<int>> oa(s.alpha().size()), ob(s.beta().size());
  for (std::size_t i = 0; i < oa.size(); ++i) {
    oa[i] = s.alpha()[i].orbitals();
    ea[i] = same_spin(oa[i]);
  }
  for (std::size_t i = 0; i < ob.size(); ++i) {
    ob[i] = s.beta()[i].orbitals();
    eb[i] = same_spin(ob[i]);
  }
  for (std::size_t ia = 0; ia < oa.size(); ++ia)
    for (std::size_t ib = 0; ib < ob.size(); ++ib) {
      double e = ints_.e_core() + ea[ia] + eb[ib];
      for (int p : oa[ia])
        for (int q : ob[ib]) e += ints_.eri(p, p, q, q);
      diag(static_cast<Eigen::Index>(ia * ob.size() + ib)) = e;
    }
  return diag;
}

CIVector sigma(const IntegralSet& ints, const DetSpacePtr& space, const CIVector& c) {
  return Hamiltonian(ints, space).apply(c);
}

RealMatrix dense_hamiltonian(const IntegralSet& ints, const DetSpace& space, std::size_t cap) {
  check_cap(space, cap);
  if (space.norb() != ints.norb())
    throw std::invalid_argument("dense_hamiltonian: norb mismatch");
  const int n = space.norb();
  const std::size_t dim = space.dimension();
  const std::size_t nb = space.beta().size();
  RealMatrix H = RealMatrix::Zero(dim, dim);

  const auto count = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t col = 0; col < count; ++col) {
    const SpinOrbitalDet ket{space.alpha()[col / nb].bits, space.beta()[col % nb].bits};
    double diag = ints.e_core();
    for (int s = 0; s < 2; ++s)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const double v = ints.h(p, q);
          if (v == 0.0) continue;
          SpinOrbitalDet d = ket;
          if (!d.annihilate(q, s) || !d.create(p, s)) continue;
          H(det_index(space, d), col) += d.sign * v;
        }
    // 1/2 (pq|rs) c†_{p s} c†_{r t} c_{s' t} c_{q s}
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        for (int q = 0; q < n; ++q)
          for (int ss = 0; ss < n; ++ss) {
            SpinOrbitalDet d1 = ket;
            if (!d1.annihilate(q, s) || !d1.annihilate(ss, t)) continue;
            for (int p = 0; p < n; ++p)
              for (int r = 0; r < n; ++r) {
                const double v = ints.eri(p, q, r, ss);
                if (v == 0.0) continue;
                SpinOrbitalDet d = d1;
                if (!d.create(r, t) || !d.create(p, s)) continue;
                H(det_index(space, d), col) += 0.5 * d.sign * v;
              }
          }
    H(col, col) += diag;
  }
  return H;
}

OneBodyAction::OneBodyAction(const ComplexMatrix& a, DetSpacePtr space, Exec exec)
    : space_(std::move(space)), exec_(exec) {
  if (a.rows() != space_->norb() || a.cols() != space_->norb())
    throw std::invalid_argument("apply_one_body: operator dimension differs from norb");
  alpha_ = kernels::build_one_body_operator(space_->alpha(), a, exec);
  beta_ = kernels::build_one_body_operator(space_->beta(), a, exec);
}

CIVector OneBodyAction::apply(const CIVector& c) const {
  CIVector out(space_);
  apply(c, out);
  return out;
}

void OneBodyAction::apply(const CIVector& c, CIVector& out) const {
  if (!(c.space() == *space_)) throw std::invalid_argument("apply_one_body: space mismatch");
  if (!out.space_ptr() || !(out.space() == *space_)) out = CIVector(space_);
  kernels::one_body(*space_, alpha_, beta_, c.amp(), out.amp(), exec_);
}

CIVector apply_one_body(const OneBodyOperator& a, const CIVector& c) {
  return apply_one_body(a.matrix, c);
}

CIVector apply_one_body(const ComplexMatrix& a, const CIVector& c) {
  return OneBodyAction(a, c.space_ptr()).apply(c);
}

ComplexMatrix dense_one_body(const ComplexMatrix& a, const DetSpace& space, std::size_t cap) {
  check_cap(space, cap);
  const int n = space.norb();
  const std::size_t dim = space.dimension();
  const std::size_t nb = space.beta().size();
  ComplexMatrix A = ComplexMatrix::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const SpinOrbitalDet ket{space.alpha()[col / nb].bits, space.beta()[col % nb].bits};
    for (int s = 0; s < 2; ++s)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          if (a(p, q) == cplx{}) continue;
          SpinOrbitalDet d = ket;
          if (!d.annihilate(q, s) || !d.create(p, s)) continue;
          A(det_index(space, d), col) += static_cast<double>(d.sign) * a(p, q);
        }
  }
  return A;
}

}  // namespace kickci
