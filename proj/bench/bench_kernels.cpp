#include <benchmark/benchmark.h>

#include <cmath>

#include "fnoise/fock.hpp"
#include "fnoise/moments.hpp"

namespace {

using namespace fnoise;

ColorFilterTuple bench_tuple() {
  return ColorFilterTuple({1, 2, 1, 2, 1, 2, 1, 2},
                          {Filter::all(), Filter::prefix(1), Filter::all(), Filter::empty(), Filter::all(),
                           Filter::prefix(2), Filter::all(), Filter::all()});
}

template <bool Parallel>
void BM_ConvolutionCoefficients(benchmark::State& state) {
  const auto cf = bench_tuple();
  const auto seq = MomentSequence::rademacher(static_cast<int>(cf.size()));
  for (auto _ : state) {
    auto c = Parallel ? convolution_coefficients(cf, seq) : convolution_coefficients_serial(cf, seq);
    benchmark::DoNotOptimize(c);
  }
}

template <bool Parallel>
void BM_MfreeSampleMoment(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto v = Parallel ? mfree_sample_moment(m, 8, SampleKind::clt())
                      : mfree_sample_moment_serial(m, 8, SampleKind::clt());
    benchmark::DoNotOptimize(v);
  }
}

// Creation in mode 0 plus the number of particles on the diagonal.
ColumnFn creation_column(const FockSpace& space) {
  return [&space](std::size_t col, std::vector<std::pair<std::size_t, Scalar>>& out) {
    auto occ = space.occupation(col);
    out.emplace_back(col, Scalar(space.grade(col)));
    occ[0] += 1;
    if (auto row = space.index_of(occ)) out.emplace_back(*row, Scalar(std::sqrt(double(occ[0]))));
  };
}

template <bool Parallel>
void BM_Assemble(benchmark::State& state) {
  const FockSpace space(Truncation{4, Rational(1, 4), 2, static_cast<int>(state.range(0))});
  const auto column = creation_column(space);
  for (auto _ : state) {
    auto m = Parallel ? assemble(space, column) : assemble_serial(space, column);
    benchmark::DoNotOptimize(m);
  }
  state.counters["basis"] = static_cast<double>(space.size());
}

}  // namespace

BENCHMARK(BM_ConvolutionCoefficients<false>)->Name("convolution_coefficients/serial");
BENCHMARK(BM_ConvolutionCoefficients<true>)->Name("convolution_coefficients/openmp");
BENCHMARK(BM_MfreeSampleMoment<false>)->Name("mfree_sample_moment/serial")->Arg(2)->Arg(3);
BENCHMARK(BM_MfreeSampleMoment<true>)->Name("mfree_sample_moment/openmp")->Arg(2)->Arg(3);
BENCHMARK(BM_Assemble<false>)->Name("assemble/serial")->Arg(4)->Arg(6);
BENCHMARK(BM_Assemble<true>)->Name("assemble/openmp")->Arg(4)->Arg(6);

BENCHMARK_MAIN();
