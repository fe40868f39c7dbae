#include "jtmom/valuation.hpp"

#include <atomic>
#include <cmath>

#include "jtmom/errors.hpp"

namespace jtmom {
namespace {

std::atomic<std::uint64_t> g_zero_div_anomalies{0};

void require_nonnegative_p(const Table& p) {
  for (double v : p.values()) {
    if (v < 0.0) throw DomainError("p-part cells must be nonnegative");
  }
}

}  // namespace

PairPotential::PairPotential(Table p, Table h)
    : p_(std::move(p)), h_(std::move(h)) {
  if (p_.scope() != h_.scope() || p_.dims() != h_.dims()) {
    throw ScopeError("p-part and h-part must share scope and shape");
  }
  require_nonnegative_p(p_);
}

PairPotential vacuous_pair(const Scope& scope, const Frames& frames) {
  return PairPotential(Table::ones(scope, frames), Table::zeros(scope, frames));
}

bool pair_equal(const PairPotential& a, const PairPotential& b, double tol) {
  if (a.scope() != b.scope()) {
    throw ScopeError("pair_equal requires a common scope");
  }
  const auto pa = a.p().values();
  const auto pb = b.p().values();
  const auto ha = a.h().values();
  const auto hb = b.h().values();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!approx_equal(pa[i], pb[i], tol)) return false;
  }
  for (std::size_t i = 0; i < ha.size(); ++i) {
    if (pa[i] > tol && pb[i] > tol && !approx_equal(ha[i], hb[i], tol)) {
      return false;
    }
  }
  return true;
}

PairPotential ln_combine(const PairPotential& a, const PairPotential& b) {
  return PairPotential(table_product(a.p(), b.p()), table_sum(a.h(), b.h()));
}

PairPotential ln_marginalize(const PairPotential& a, const Scope& target) {
  Table p_out = sum_marginal(a.p(), target);
  Table num = sum_marginal(table_product(a.p(), a.h()), target);
  std::vector<double> h(p_out.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double den = p_out[i];
    if (den == 0.0) {
      if (num[i] != 0.0) g_zero_div_anomalies.fetch_add(1);
      h[i] = 0.0;
    } else {
      h[i] = num[i] / den;
    }
  }
  Table h_out(p_out.scope(), p_out.dims(), std::move(h));
  return PairPotential(std::move(p_out), std::move(h_out));
}

PairPotential maua_combine(const PairPotential& a, const PairPotential& b) {
  Table p = table_product(a.p(), b.p());
  Table h = table_sum(table_product(a.h(), b.p()), table_product(a.p(), b.h()));
  return PairPotential(std::move(p), std::move(h));
}

PairPotential maua_marginalize(const PairPotential& a, const Scope& target) {
  return PairPotential(sum_marginal(a.p(), target),
                       sum_marginal(a.h(), target));
}

PairPotential lift_ln(const Table& p_c, const Table& h_c) {
  require_nonnegative_p(p_c);
  return PairPotential(p_c, h_c);
}

PairPotential lift_maua(const Table& p_c, const Table& h_c) {
  require_nonnegative_p(p_c);
  return PairPotential(p_c, table_product(p_c, h_c));
}

std::uint64_t zero_division_anomalies() { return g_zero_div_anomalies.load(); }

void reset_zero_division_anomalies() { g_zero_div_anomalies.store(0); }

}  // namespace jtmom
