// The OpenMP kernels must be bit-identical to the serial reference for any
// shape, including sizes well above the parallel dispatch cutoff.

#include <doctest.h>

#include <random>

#include "jtmom/kernels.hpp"
#include "jtmom/table.hpp"
#include "testutil.hpp"

using namespace jtmom;

namespace {

Table big_random_table(std::mt19937_64& rng, int nvars) {
  std::vector<VariableId> vars(nvars);
  Frames frames(nvars, 2);
  for (int i = 0; i < nvars; ++i) vars[i] = static_cast<VariableId>(i);
  return jtt::random_table(rng, Scope::from_vars(vars), frames, -1.0, 1.0);
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("parallel binary kernels match serial bit for bit") {
  std::mt19937_64 rng(201);
  // 2^16 cells apiece, overlapping on half the variables
  Frames frames(24, 2);
  std::vector<VariableId> left, right;
  for (VariableId v = 0; v < 16; ++v) left.push_back(v);
  for (VariableId v = 8; v < 24; ++v) right.push_back(v);
  const Table a =
      jtt::random_table(rng, Scope::from_vars(left), frames, -1.0, 1.0);
  const Table b =
      jtt::random_table(rng, Scope::from_vars(right), frames, -1.0, 1.0);

  const Table prod_serial = table_product(a, b, Exec::serial);
  const Table prod_parallel = table_product(a, b, Exec::parallel);
  CHECK(prod_serial == prod_parallel);

  const Table sum_serial = table_sum(a, b, Exec::serial);
  const Table sum_parallel = table_sum(a, b, Exec::parallel);
  CHECK(sum_serial == sum_parallel);
}

TEST_CASE("parallel sum_marginal matches serial bit for bit") {
  std::mt19937_64 rng(202);
  const Table t = big_random_table(rng, 18);

  SUBCASE("suffix elimination") {
    const Table s = sum_marginal(t, Scope{0, 1, 2}, Exec::serial);
    const Table p = sum_marginal(t, Scope{0, 1, 2}, Exec::parallel);
    CHECK(s == p);
  }
  SUBCASE("interleaved elimination") {
    const Scope target{1, 4, 7, 11, 16};
    const Table s = sum_marginal(t, target, Exec::serial);
    const Table p = sum_marginal(t, target, Exec::parallel);
    CHECK(s == p);
  }
  SUBCASE("grand total") {
    const Table s = sum_marginal(t, Scope{}, Exec::serial);
    const Table p = sum_marginal(t, Scope{}, Exec::parallel);
    CHECK(s == p);
  }
}

TEST_CASE("random small shapes agree across kernels and the oracle") {
  std::mt19937_64 rng(203);
  const Frames frames{2, 3, 2, 3};
  const Scope all{0, 1, 2, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const Scope sa = jtt::random_subset(rng, all);
    const Scope sb = jtt::random_subset(rng, all);
    const Table a = jtt::random_table(rng, sa, frames, -1.0, 1.0);
    const Table b = jtt::random_table(rng, sb, frames, -1.0, 1.0);
    CHECK(table_product(a, b, Exec::serial) ==
          table_product(a, b, Exec::parallel));

    const Scope target = jtt::random_subset(rng, sa);
    const Table ms = sum_marginal(a, target, Exec::serial);
    CHECK(ms == sum_marginal(a, target, Exec::parallel));
    const auto want = jtt::oracle_sum_marginal(a, target, frames);
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(approx_equal(ms[i], want[i], 1e-12));
    }
  }
}

TEST_CASE("scalar operands") {
  const Table s1(Scope{}, {}, {2.5});
  const Table s2(Scope{}, {}, {4.0});
  CHECK(table_product(s1, s2).values()[0] == 10.0);
  CHECK(table_sum(s1, s2).values()[0] == 6.5);
  const Table t(Scope{0}, {3}, {1, 2, 3});
  CHECK(table_product(t, s1).values()[1] == 5.0);
  CHECK(sum_marginal(s1, Scope{}).values()[0] == 2.5);
}

}  // TEST_SUITE
