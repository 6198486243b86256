#include <benchmark/benchmark.h>

#include "kickci/davidson.hpp"
#include "kickci/rdm.hpp"

namespace {

using namespace kickci;

struct Fixture {
  IntegralSet ints;
  DetSpacePtr space;
  CIVector c;
  ComplexMatrix s;

  explicit Fixture(int sites)
      : ints(make_hubbard_model(sites, 1.0, 4.0, true)),
        space(make_space(sites, sites / 2, sites / 2)),
        c(CIVector::random(space, 11, true)),
        s(ComplexMatrix::Random(sites, sites)) {
    s = (s + s.adjoint()).eval();
  }
};

const Fixture& fixture(int sites) {
  static const Fixture f8(8), f10(10), f12(12);
  return sites == 8 ? f8 : (sites == 10 ? f10 : f12);
}

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

void BM_Sigma(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<int>(st.range(0)));
  const Hamiltonian h(f.ints, f.space, exec_of(st));
  CIVector out(f.space);
  for (auto _ : st) {
    h.apply(f.c, out);
    benchmark::DoNotOptimize(out.amp().data());
  }
  st.counters["dim"] = static_cast<double>(f.space->dimension());
}

void BM_OneBody(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<int>(st.range(0)));
  const OneBodyAction op(f.s, f.space, exec_of(st));
  CIVector out(f.space);
  for (auto _ : st) {
    op.apply(f.c, out);
    benchmark::DoNotOptimize(out.amp().data());
  }
}

void BM_TwoRDM(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto blocks = two_rdm_blocks(f.c, exec_of(st));
    benchmark::DoNotOptimize(blocks.aa.t.data());
  }
}

}  // namespace

// Second argument: 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_Sigma)->ArgsProduct({{8, 10, 12}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OneBody)->ArgsProduct({{8, 10, 12}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoRDM)->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
