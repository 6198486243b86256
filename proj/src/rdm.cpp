#include "kickci/rdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kickci {

namespace {

constexpr double kDegenerateGap = 1e-10;

int parity(int n) { return (n & 1) ? -1 : 1; }

// c_l c_j |S> = sign |T> for ordered pairs j != l occupied in S.
struct PairRemoval {
  std::uint32_t target;
  std::uint16_t col;  // j * norb + l
  std::int8_t sign;
};

std::vector<std::vector<PairRemoval>> pair_removals(const StringTable& strings) {
  const int n = strings.norb();
  const int ne = strings.nelec();
  std::vector<std::vector<PairRemoval>> out(strings.size());
  if (ne < 2) return out;
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const SpinString s = strings[i];
    for (int j : s.orbitals()) {
      const SpinString s1{s.bits & ~(std::uint64_t{1} << j)};
      const int sign_j = parity(s.count_below(j));
      for (int l : s1.orbitals()) {
        const SpinString t{s1.bits & ~(std::uint64_t{1} << l)};
        out[i].push_back({static_cast<std::uint32_t>(string_address(t, n, ne - 2)),
                          static_cast<std::uint16_t>(j * n + l),
                          static_cast<std::int8_t>(sign_j * parity(s1.count_below(l)))});
      }
    }
  }
  return out;
}

// c_j |T ∪ {j}> = sign |T> for every j not in T.
struct Creation {
  std::uint32_t source;
  std::uint8_t orb;
  std::int8_t sign;
};

std::vector<std::vector<Creation>> creations(int norb, int ne_target, const StringTable& full) {
  std::vector<std::vector<Creation>> out;
  for (SpinString t : enumerate_strings(norb, ne_target)) {
    std::vector<Creation> row;
    for (int j = 0; j < norb; ++j) {
      if (t.occupied(j)) continue;
      const SpinString s{t.bits | (std::uint64_t{1} << j)};
      row.push_back({static_cast<std::uint32_t>(full.address(s)), static_cast<std::uint8_t>(j),
                     static_cast<std::int8_t>(parity(t.count_below(j)))});
    }
    out.push_back(std::move(row));
  }
  return out;
}

TwoRDMBlock empty_block(BlockKind kind, const DetSpace& s) {
  const int n = s.norb();
  return {kind, n, s.nalpha(), s.nbeta(), ComplexMatrix::Zero(n * n, n * n)};
}

// Same-spin block; `alpha_channel` selects which channel is annihilated.
TwoRDMBlock same_spin_block(const CIVector& c, bool alpha_channel, Exec exec) {
  const DetSpace& s = c.space();
  TwoRDMBlock block = empty_block(alpha_channel ? BlockKind::AA : BlockKind::BB, s);
  const StringTable& strings = alpha_channel ? s.alpha() : s.beta();
  const std::size_t nother = alpha_channel ? s.beta().size() : s.alpha().size();
  if (strings.nelec() < 2) return block;
  const int n = s.norb();
  const auto removals = pair_removals(strings);
  const auto ntarget = static_cast<Eigen::Index>(binomial(n, strings.nelec() - 2));
  const AmplitudeGrid& amp = c.amp();

  block.t = kernels::chunked_reduce(
      nother, n * n, n * n,
      [&](std::size_t other, ComplexMatrix& acc) {
        ComplexMatrix v = ComplexMatrix::Zero(ntarget, n * n);
        for (std::size_t i = 0; i < strings.size(); ++i) {
          const cplx a = alpha_channel ? amp(i, other) : amp(other, i);
          if (a == cplx{}) continue;
          for (const PairRemoval& r : removals[i]) v(r.target, r.col) += static_cast<double>(r.sign) * a;
        }
        acc.noalias() += v.adjoint() * v;
      },
      exec);
  block.t = 0.5 * (block.t + block.t.adjoint()).eval();
  return block;
}

}  // namespace

double TwoRDMBlock::expected_trace() const {
  switch (kind) {
    case BlockKind::AA:
      return static_cast<double>(nalpha) * (nalpha - 1);
    case BlockKind::BB:
      return static_cast<double>(nbeta) * (nbeta - 1);
    case BlockKind::AB:
      return static_cast<double>(nalpha) * nbeta;
  }
  return 0.0;
}

OneRDM one_rdm(const CIVector& c, Spin spin) {
  require_normalized(c);
  const DetSpace& s = c.space();
  const int n = s.norb();
  OneRDM d{spin, spin == Spin::alpha ? s.nalpha() : s.nbeta(), ComplexMatrix::Zero(n, n)};
  const AmplitudeGrid& amp = c.amp();
  if (spin == Spin::alpha) {
    for (std::size_t i = 0; i < s.alpha().size(); ++i)
      for (const StringLink& l : s.alpha().links(i))
        d.m(l.p, l.q) += static_cast<double>(l.sign) * amp.row(l.target).dot(amp.row(i));
  } else {
    for (std::size_t i = 0; i < s.beta().size(); ++i)
      for (const StringLink& l : s.beta().links(i))
        d.m(l.p, l.q) += static_cast<double>(l.sign) * amp.col(l.target).dot(amp.col(i));
  }
  return d;
}

TwoRDMBlocks two_rdm_blocks(const CIVector& c, Exec exec) {
  require_normalized(c);
  const DetSpace& s = c.space();
  TwoRDMBlocks out{same_spin_block(c, true, exec), empty_block(BlockKind::AB, s)};
  if (s.nalpha() < 1 || s.nbeta() < 1) return out;

  const int n = s.norb();
  const auto alpha_create = creations(n, s.nalpha() - 1, s.alpha());
  const auto beta_create = creations(n, s.nbeta() - 1, s.beta());
  const auto nu = static_cast<Eigen::Index>(beta_create.size());
  // c_lβ passes the Nα - 1 remaining α electrons.
  const double cross = parity(s.nalpha() - 1);
  const AmplitudeGrid& amp = c.amp();

  out.ab.t = kernels::chunked_reduce(
      alpha_create.size(), n * n, n * n,
      [&](std::size_t t, ComplexMatrix& acc) {
        ComplexMatrix v = ComplexMatrix::Zero(nu, n * n);
        for (const Creation& ca : alpha_create[t])
          for (Eigen::Index u = 0; u < nu; ++u)
            for (const Creation& cb : beta_create[u])
              v(u, ca.orb * n + cb.orb) += (cross * ca.sign * cb.sign) * amp(ca.source, cb.source);
        acc.noalias() += v.adjoint() * v;
      },
      exec);
  out.ab.t = 0.5 * (out.ab.t + out.ab.t.adjoint()).eval();
  return out;
}

TwoRDMBlock two_rdm_bb(const CIVector& c, Exec exec) {
  require_normalized(c);
  return same_spin_block(c, false, exec);
}

StateRDMs compute_rdms(const CIVector& c, Exec exec) {
  TwoRDMBlocks blocks = two_rdm_blocks(c, exec);
  return {one_rdm(c, Spin::alpha), one_rdm(c, Spin::beta), std::move(blocks.aa), two_rdm_bb(c, exec),
          std::move(blocks.ab)};
}

NaturalOrbitals natural_orbitals(const OneRDM& d) {
  const int n = d.norb();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (d.m + d.m.adjoint()));
  NaturalOrbitals no{eig.eigenvalues().reverse(), eig.eigenvectors().rowwise().reverse()};

  auto lead_index = [](const ComplexVector& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
      if (std::abs(v(i)) > std::abs(v(best)) * (1.0 + 1e-9)) best = i;
    return best;
  };
  auto fix_phase = [&](ComplexVector& v) {
    const Eigen::Index i = lead_index(v);
    v *= std::conj(v(i)) / std::abs(v(i));
  };

  for (int start = 0; start < n;) {
    int end = start + 1;
    while (end < n && no.f(end - 1) - no.f(end) < kDegenerateGap) ++end;
    const int size = end - start;
    if (size > 1) {
      const ComplexMatrix block = no.u.middleCols(start, size);
      const ComplexMatrix proj = block * block.adjoint();
      std::vector<ComplexVector> basis;
      for (int k = 0; k < n && static_cast<int>(basis.size()) < size; ++k) {
        ComplexVector v = proj.col(k);
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& b : basis) v -= b * b.dot(v);
        const double norm = v.norm();
        if (norm < 1e-6) continue;
        basis.push_back(v / norm);
      }
      for (auto& v : basis) fix_phase(v);
      std::stable_sort(basis.begin(), basis.end(), [&](const ComplexVector& a, const ComplexVector& b) {
        return lead_index(a) < lead_index(b);
      });
      for (int k = 0; k < size; ++k) no.u.col(start + k) = basis[k];
      const double mean = no.f.segment(start, size).mean();
      no.f.segment(start, size).setConstant(mean);
    } else {
      ComplexVector v = no.u.col(start);
      fix_phase(v);
      no.u.col(start) = v;
    }
    start = end;
  }
  return no;
}

double spin_squared(const TwoRDMBlock& ab) {
  if (ab.kind != BlockKind::AB) throw std::invalid_argument("spin_squared needs the AB block");
  const int n = ab.norb;
  cplx exchange = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) exchange += ab(j, i, i, j);
  const double sz = 0.5 * (ab.nalpha - ab.nbeta);
  return ab.nbeta - exchange.real() + sz * sz + sz;
}

OneRDM trace_down(const TwoRDMBlock& b) {
  const int n = b.norb;
  double denom = 0.0;
  OneRDM d;
  switch (b.kind) {
    case BlockKind::AA:
      denom = b.nalpha - 1;
      d = {Spin::alpha, b.nalpha, ComplexMatrix::Zero(n, n)};
      break;
    case BlockKind::BB:
      denom = b.nbeta - 1;
      d = {Spin::beta, b.nbeta, ComplexMatrix::Zero(n, n)};
      break;
    case BlockKind::AB:
      denom = b.nbeta;
      d = {Spin::alpha, b.nalpha, ComplexMatrix::Zero(n, n)};
      break;
  }
  if (denom <= 0.0) throw InapplicableError("trace_down: block has no partner electrons to trace");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += b(i, k, j, k);
      d.m(i, j) = acc / denom;
    }
  return d;
}

ComplexMatrix spin_orbital_two_rdm(const StateRDMs& r) {
  const int n = r.aa.norb;
  const int ns = 2 * n;
  ComplexMatrix d = ComplexMatrix::Zero(ns * ns, ns * ns);
  auto at = [&](int p, int q, int rr, int s) -> cplx& { return d(p * ns + q, rr * ns + s); };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          at(p, q, u, v) = r.aa(p, q, u, v);
          at(p + n, q + n, u + n, v + n) = r.bb(p, q, u, v);
          at(p, q + n, u, v + n) = r.ab(p, q, u, v);
          at(p + n, q, u + n, v) = r.ab(q, p, v, u);
          at(p, q + n, u + n, v) = -r.ab(p, q, v, u);
          at(p + n, q, u, v + n) = -r.ab(q, p, u, v);
        }
  return d;
}

ComplexMatrix spin_orbital_one_rdm(const StateRDMs& r) {
  const int n = r.da.norb();
  ComplexMatrix d = ComplexMatrix::Zero(2 * n, 2 * n);
  d.topLeftCorner(n, n) = r.da.m;
  d.bottomRightCorner(n, n) = r.db.m;
  return d;
}

}  // namespace kickci
