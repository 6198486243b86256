#include "kickci/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include <omp.h>

namespace kickci::kernels {

namespace {

// Runs body(i) for i in [0, n) under the requested policy.
template <class Body>
void for_rows(std::size_t n, Exec exec, Body&& body) {
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  }
}

template <class T>
StringOperator<T> assemble(std::vector<std::vector<std::pair<std::uint32_t, T>>>& rows) {
  StringOperator<T> op;
  op.offsets.reserve(rows.size() + 1);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [col, val] : row) {
      op.cols.push_back(col);
      op.vals.push_back(val);
    }
    op.offsets.push_back(op.cols.size());
  }
  return op;
}

// Dense scratch row plus the list of touched columns.
template <class T>
struct Scratch {
  std::vector<T> value;
  std::vector<char> touched;
  std::vector<std::uint32_t> list;

  explicit Scratch(std::size_t n) : value(n, T{}), touched(n, 0) {}

  void add(std::uint32_t j, T v) {
    if (!touched[j]) {
      touched[j] = 1;
      list.push_back(j);
    }
    value[j] += v;
  }

  std::vector<std::pair<std::uint32_t, T>> drain() {
    std::vector<std::pair<std::uint32_t, T>> out;
    out.reserve(list.size());
    for (std::uint32_t j : list) {
      if (value[j] != T{}) out.emplace_back(j, value[j]);
      value[j] = T{};
      touched[j] = 0;
    }
    list.clear();
    return out;
  }
};

}  // namespace

RealStringOperator build_same_spin_operator(const StringTable& strings, const RealMatrix& h,
                                            const std::vector<double>& eri, Exec exec) {
  const int n = strings.norb();
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  RealMatrix k = h;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) k(p, q) -= 0.5 * eri[(p * n + r) * n2 + r * n + q];

  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(strings.size());
  auto build_row = [&](std::size_t i, Scratch<double>& scratch) {
    // F[J] = <J|H|I>, which equals <I|H|J> for this real symmetric operator.
    for (const StringLink& first : strings.links(i)) {
      const int kk = first.p, ll = first.q;
      scratch.add(first.target, first.sign * k(kk, ll));
      const std::size_t kl = static_cast<std::size_t>(kk) * n + ll;
      for (const StringLink& second : strings.links(first.target)) {
        const double v = eri[(static_cast<std::size_t>(second.p) * n + second.q) * n2 + kl];
        if (v != 0.0) scratch.add(second.target, 0.5 * first.sign * second.sign * v);
      }
    }
    rows[i] = scratch.drain();
  };

  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      Scratch<double> scratch(strings.size());
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(strings.size()); ++i)
        build_row(static_cast<std::size_t>(i), scratch);
    }
  } else {
    Scratch<double> scratch(strings.size());
    for (std::size_t i = 0; i < strings.size(); ++i) build_row(i, scratch);
  }
  return assemble(rows);
}

ComplexStringOperator build_one_body_operator(const StringTable& strings, const ComplexMatrix& a,
                                              Exec exec) {
  std::vector<std::vector<std::pair<std::uint32_t, cplx>>> rows(strings.size());
  auto build_row = [&](std::size_t i, Scratch<cplx>& scratch) {
    // E_pq|I> = s|J>  =>  <I|E_qp|J> = s.
    for (const StringLink& link : strings.links(i))
      scratch.add(link.target, static_cast<double>(link.sign) * a(link.q, link.p));
    rows[i] = scratch.drain();
  };
  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      Scratch<cplx> scratch(strings.size());
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(strings.size()); ++i)
        build_row(static_cast<std::size_t>(i), scratch);
    }
  } else {
    Scratch<cplx> scratch(strings.size());
    for (std::size_t i = 0; i < strings.size(); ++i) build_row(i, scratch);
  }
  return assemble(rows);
}

void sigma(const SigmaTables& t, const AmplitudeGrid& in, AmplitudeGrid& out, Exec exec) {
  const DetSpace& space = *t.space;
  const StringTable& sa = space.alpha();
  const StringTable& sb = space.beta();
  const std::size_t nb = sb.size();
  const std::size_t n = space.norb();
  const std::size_t n2 = n * n;
  out.setZero(in.rows(), in.cols());

  for_rows(sa.size(), exec, [&](std::size_t ia) {
    auto row = out.row(static_cast<Eigen::Index>(ia));
    row = t.e_core * in.row(static_cast<Eigen::Index>(ia));

    // αα: whole rows of the grid.
    for (std::size_t e = t.alpha.offsets[ia]; e < t.alpha.offsets[ia + 1]; ++e)
      row += t.alpha.vals[e] * in.row(t.alpha.cols[e]);

    // ββ: within the row.
    for (std::size_t ib = 0; ib < nb; ++ib) {
      cplx acc = 0.0;
      for (std::size_t e = t.beta.offsets[ib]; e < t.beta.offsets[ib + 1]; ++e)
        acc += t.beta.vals[e] * in(ia, t.beta.cols[e]);
      row(ib) += acc;
    }

    // αβ: <Iα|E_qp|Jα> <Iβ|E_q'p'|Jβ> (qp|q'p').
    for (const StringLink& la : sa.links(ia)) {
      const double* eri_qp = t.eri.data() + (static_cast<std::size_t>(la.q) * n + la.p) * n2;
      for (std::size_t ib = 0; ib < nb; ++ib) {
        cplx acc = 0.0;
        for (const StringLink& lb : sb.links(ib)) {
          const double v = eri_qp[static_cast<std::size_t>(lb.q) * n + lb.p];
          if (v != 0.0) acc += (lb.sign * v) * in(la.target, lb.target);
        }
        row(ib) += static_cast<double>(la.sign) * acc;
      }
    }
  });
}

void one_body(const DetSpace& space, const ComplexStringOperator& alpha,
              const ComplexStringOperator& beta, const AmplitudeGrid& in, AmplitudeGrid& out,
              Exec exec) {
  const std::size_t nb = space.beta().size();
  out.setZero(in.rows(), in.cols());
  for_rows(space.alpha().size(), exec, [&](std::size_t ia) {
    auto row = out.row(static_cast<Eigen::Index>(ia));
    for (std::size_t e = alpha.offsets[ia]; e < alpha.offsets[ia + 1]; ++e)
      row += alpha.vals[e] * in.row(alpha.cols[e]);
    for (std::size_t ib = 0; ib < nb; ++ib) {
      cplx acc = 0.0;
      for (std::size_t e = beta.offsets[ib]; e < beta.offsets[ib + 1]; ++e)
        acc += beta.vals[e] * in(ia, beta.cols[e]);
      row(ib) += acc;
    }
  });
}

ComplexMatrix chunked_reduce(std::size_t n, Eigen::Index rows, Eigen::Index cols,
                             const std::function<void(std::size_t, ComplexMatrix&)>& accumulate,
                             Exec exec) {
  const std::size_t nchunk = std::min<std::size_t>(kReductionChunks, std::max<std::size_t>(n, 1));
  std::vector<ComplexMatrix> partial(nchunk, ComplexMatrix::Zero(rows, cols));
  for_rows(nchunk, exec, [&](std::size_t c) {
    const std::size_t begin = n * c / nchunk, end = n * (c + 1) / nchunk;
    for (std::size_t i = begin; i < end; ++i) accumulate(i, partial[c]);
  });
  ComplexMatrix total = ComplexMatrix::Zero(rows, cols);
  for (const auto& p : partial) total += p;
  return total;
}

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace kickci::kernels
