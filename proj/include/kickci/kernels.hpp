#pragma once

// Data-parallel inner loops of the CI engine.
//
// Every kernel takes an Exec policy. Exec::serial is the reference loop kept
// for testing; Exec::parallel distributes the same per-row (or per-chunk) work
// over OpenMP threads. Each output row is written by exactly one iteration and
// reductions are merged in a fixed chunk order, so both policies produce
// bit-identical results for any thread count.

#include <cstdint>
#include <functional>
#include <vector>

#include "kickci/civector.hpp"
#include "kickci/common.hpp"
#include "kickci/detspace.hpp"

namespace kickci::kernels {

enum class Exec { serial, parallel };

/// CSR matrix over the strings of one spin channel.
template <class T>
struct StringOperator {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<T> vals;

  std::size_t rows() const { return offsets.size() - 1; }
  std::size_t nnz() const { return vals.size(); }
};

using RealStringOperator = StringOperator<double>;
using ComplexStringOperator = StringOperator<cplx>;

/// <I| sum_kl k_kl E_kl + 1/2 sum_ijkl (ij|kl) E_ij E_kl |J> on one channel,
/// where k_kl = h_kl - 1/2 sum_j (kj|jl). `eri` is dense, norb^4.
RealStringOperator build_same_spin_operator(const StringTable& strings, const RealMatrix& h,
                                            const std::vector<double>& eri, Exec exec);

/// <I| sum_pq A_pq E_pq |J> on one channel.
ComplexStringOperator build_one_body_operator(const StringTable& strings, const ComplexMatrix& a,
                                              Exec exec);

/// Everything sigma needs, precomputed once per Hamiltonian.
struct SigmaTables {
  const DetSpace* space = nullptr;
  RealStringOperator alpha;
  RealStringOperator beta;
  std::vector<double> eri;
  double e_core = 0.0;
};

/// out = H * in (out is overwritten).
void sigma(const SigmaTables& tables, const AmplitudeGrid& in, AmplitudeGrid& out, Exec exec);

/// out = (sum_pq A_pq sum_sigma c†_{p sigma} c_{q sigma}) * in.
void one_body(const DetSpace& space, const ComplexStringOperator& alpha,
              const ComplexStringOperator& beta, const AmplitudeGrid& in, AmplitudeGrid& out,
              Exec exec);

/// Fixed number of chunks used by reductions, independent of thread count.
inline constexpr std::size_t kReductionChunks = 64;

/// Sums `accumulate(item, acc)` over items [0, n) into a rows x cols matrix.
/// Items are split into kReductionChunks contiguous chunks, each reduced
/// sequentially; chunk partials are added in chunk order.
ComplexMatrix chunked_reduce(std::size_t n, Eigen::Index rows, Eigen::Index cols,
                             const std::function<void(std::size_t, ComplexMatrix&)>& accumulate,
                             Exec exec);

/// Sets the OpenMP worker count for Exec::parallel (0 keeps the default).
void set_threads(int n);
int max_threads();

}  // namespace kickci::kernels
