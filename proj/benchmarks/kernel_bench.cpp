// Serial reference vs OpenMP table kernels, plus an end-to-end chain moment.
// Run: ./jtmom_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "jtmom/kernels.hpp"
#include "jtmom/model.hpp"
#include "jtmom/moments.hpp"
#include "jtmom/table.hpp"

using namespace jtmom;

namespace {

Table random_table(std::mt19937_64& rng, int first_var, int nvars) {
  std::vector<VariableId> vars(nvars);
  for (int i = 0; i < nvars; ++i) {
    vars[i] = static_cast<VariableId>(first_var + i);
  }
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  std::vector<double> values(std::size_t{1} << nvars);
  for (double& v : values) v = dist(rng);
  return Table(Scope::from_vars(std::move(vars)),
               std::vector<std::uint32_t>(nvars, 2), std::move(values));
}

// Two tables overlapping on half their binary variables; the result has
// `bits` variables.
struct ProductFixture {
  Table a, b;
  ProductFixture(int bits, std::mt19937_64& rng)
      : a(random_table(rng, 0, bits * 3 / 4)),
        b(random_table(rng, bits / 4, bits * 3 / 4)) {}
};

void BM_product(benchmark::State& state, Exec exec) {
  std::mt19937_64 rng(42);
  ProductFixture fx(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    Table out = table_product(fx.a, fx.b, exec);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() *
                          (std::int64_t{1} << state.range(0)));
}

void BM_sum_marginal(benchmark::State& state, Exec exec) {
  std::mt19937_64 rng(43);
  const int bits = static_cast<int>(state.range(0));
  const Table t = random_table(rng, 0, bits);
  // keep the leading quarter of the variables
  std::vector<VariableId> keep;
  for (int i = 0; i < bits / 4; ++i) keep.push_back(static_cast<VariableId>(i));
  const Scope target = Scope::from_vars(std::move(keep));
  for (auto _ : state) {
    Table out = sum_marginal(t, target, exec);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << bits));
}

void BM_sum_marginal_interleaved(benchmark::State& state, Exec exec) {
  std::mt19937_64 rng(44);
  const int bits = static_cast<int>(state.range(0));
  const Table t = random_table(rng, 0, bits);
  // keep every other variable: the eliminated axes are strided
  std::vector<VariableId> keep;
  for (int i = 0; i < bits; i += 2) keep.push_back(static_cast<VariableId>(i));
  const Scope target = Scope::from_vars(std::move(keep));
  for (auto _ : state) {
    Table out = sum_marginal(t, target, exec);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << bits));
}

// Whole-pipeline comparison on a long chain with 4-state variables.
void BM_chain_moment(benchmark::State& state, bool maua) {
  Model m = make_model(Frames(state.range(0) + 1, 4));
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> pd(0.1, 1.0);
  std::uniform_real_distribution<double> hd(-1.0, 1.0);
  for (int i = 0; i < state.range(0); ++i) {
    const Scope scope{static_cast<VariableId>(i),
                      static_cast<VariableId>(i + 1)};
    std::vector<double> p(16), h(16);
    for (int row = 0; row < 4; ++row) {
      double total = 0.0;
      for (int col = 0; col < 4; ++col) {
        p[row * 4 + col] = pd(rng);
        total += p[row * 4 + col];
      }
      for (int col = 0; col < 4; ++col) p[row * 4 + col] /= total;
    }
    for (double& v : h) v = hd(rng);
    if (i == 0) {
      for (double& v : p) v /= 4.0;
    }
    m.p_factors.push_back(Table(scope, {4, 4}, std::move(p)));
    m.h_factors.push_back(Table(scope, {4, 4}, std::move(h)));
  }
  const PreparedModel prep = prepare(m);
  for (auto _ : state) {
    const MomentResult r = maua ? moment_maua(prep) : moment_ln(prep);
    benchmark::DoNotOptimize(r.m);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_product, serial, Exec::serial)->Arg(18)->Arg(22);
BENCHMARK_CAPTURE(BM_product, parallel, Exec::parallel)->Arg(18)->Arg(22);
BENCHMARK_CAPTURE(BM_sum_marginal, serial, Exec::serial)->Arg(18)->Arg(22);
BENCHMARK_CAPTURE(BM_sum_marginal, parallel, Exec::parallel)->Arg(18)->Arg(22);
BENCHMARK_CAPTURE(BM_sum_marginal_interleaved, serial, Exec::serial)->Arg(20);
BENCHMARK_CAPTURE(BM_sum_marginal_interleaved, parallel, Exec::parallel)
    ->Arg(20);
BENCHMARK_CAPTURE(BM_chain_moment, ln, false)->Arg(256);
BENCHMARK_CAPTURE(BM_chain_moment, maua, true)->Arg(256);

BENCHMARK_MAIN();
