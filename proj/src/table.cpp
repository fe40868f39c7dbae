#include "jtmom/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "jtmom/errors.hpp"
#include "jtmom/kernels.hpp"

namespace jtmom {
namespace {

// Below this many output cells the parallel dispatch runs the serial loop;
// thread startup would dominate. Results are identical either way.
constexpr std::size_t kParallelCutoff = 1 << 12;

std::size_t product_of(const std::vector<std::uint32_t>& dims) {
  std::size_t n = 1;
  for (std::uint32_t d : dims) n *= d;
  return n;
}

// Strides of each axis in a row-major, last-fastest layout.
std::vector<std::size_t> strides_of(const std::vector<std::uint32_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t ax = dims.size(); ax-- > 1;) {
    s[ax - 1] = s[ax] * dims[ax];
  }
  return s;
}

// Result scope, dims and per-operand strides for a cellwise binary op on the
// union scope. Shared variables must agree on cardinality.
struct UnionLayout {
  Scope scope;
  std::vector<std::uint32_t> dims;
  kernels::BinaryPlan plan;
};

UnionLayout union_layout(const Table& a, const Table& b) {
  UnionLayout out;
  out.scope = a.scope().unite(b.scope());
  const auto sa = strides_of(a.dims());
  const auto sb = strides_of(b.dims());
  out.dims.reserve(out.scope.size());
  out.plan.stride_a.reserve(out.scope.size());
  out.plan.stride_b.reserve(out.scope.size());
  for (VariableId v : out.scope.vars()) {
    const auto ia = a.scope().index_of(v);
    const auto ib = b.scope().index_of(v);
    std::uint32_t dim = 0;
    if (ia) dim = a.dims()[*ia];
    if (ib) {
      const std::uint32_t db = b.dims()[*ib];
      if (ia && db != dim) {
        throw ScopeError("operands disagree on the cardinality of variable " +
                         std::to_string(v));
      }
      dim = db;
    }
    out.dims.push_back(dim);
    out.plan.stride_a.push_back(ia ? sa[*ia] : 0);
    out.plan.stride_b.push_back(ib ? sb[*ib] : 0);
  }
  out.plan.dims = out.dims;
  out.plan.cells = product_of(out.dims);
  return out;
}

template <void Serial(const kernels::BinaryPlan&, const double*, const double*,
                      double*),
          void Parallel(const kernels::BinaryPlan&, const double*,
                        const double*, double*)>
Table binary_op(const Table& a, const Table& b, Exec exec) {
  UnionLayout lay = union_layout(a, b);
  std::vector<double> values(lay.plan.cells);
  if (exec == Exec::parallel && lay.plan.cells >= kParallelCutoff) {
    Parallel(lay.plan, a.values().data(), b.values().data(), values.data());
  } else {
    Serial(lay.plan, a.values().data(), b.values().data(), values.data());
  }
  return Table(std::move(lay.scope), std::move(lay.dims), std::move(values));
}

}  // namespace

Table::Table(Scope scope, std::vector<std::uint32_t> dims,
             std::vector<double> values)
    : scope_(std::move(scope)),
      dims_(std::move(dims)),
      values_(std::move(values)) {
  if (dims_.size() != scope_.size()) {
    throw ScopeError("table needs one cardinality per scope variable");
  }
  for (std::uint32_t d : dims_) {
    if (d == 0) throw DomainError("frame cardinality must be >= 1");
  }
  if (values_.size() != product_of(dims_)) {
    throw DomainError("table value count does not match the scope cells");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("table cells must be finite");
  }
}

Table Table::constant(const Scope& scope, const Frames& frames, double v) {
  std::vector<std::uint32_t> dims;
  dims.reserve(scope.size());
  for (VariableId var : scope.vars()) {
    if (var >= frames.size()) throw ScopeError("variable id out of range");
    dims.push_back(frames[var]);
  }
  return Table(scope, std::move(dims),
               std::vector<double>(cell_count(frames, scope), v));
}

Table Table::zeros(const Scope& scope, const Frames& frames) {
  return constant(scope, frames, 0.0);
}

Table Table::ones(const Scope& scope, const Frames& frames) {
  return constant(scope, frames, 1.0);
}

double Table::eval(const Configuration& x) const {
  const auto strides = strides_of(dims_);
  std::size_t idx = 0;
  for (std::size_t ax = 0; ax < scope_.size(); ++ax) {
    const VariableId v = scope_[ax];
    const auto pos = x.scope.index_of(v);
    if (!pos) {
      throw ScopeError("configuration does not assign variable " +
                       std::to_string(v));
    }
    const std::uint32_t val = x.values[*pos];
    if (val >= dims_[ax]) {
      throw DomainError("configuration value out of frame for variable " +
                        std::to_string(v));
    }
    idx += val * strides[ax];
  }
  return values_[idx];
}

Table table_product(const Table& a, const Table& b, Exec exec) {
  return binary_op<kernels::serial::product, kernels::parallel::product>(
      a, b, exec);
}

Table table_sum(const Table& a, const Table& b, Exec exec) {
  return binary_op<kernels::serial::sum, kernels::parallel::sum>(a, b, exec);
}

Table sum_marginal(const Table& t, const Scope& target, Exec exec) {
  if (!target.subset_of(t.scope())) {
    throw ScopeError("marginalization target " + target.to_string() +
                     " is not a subset of " + t.scope().to_string());
  }
  const Scope elim = t.scope().difference(target);
  const auto strides = strides_of(t.dims());

  kernels::MarginalPlan plan;
  std::vector<std::uint32_t> out_dims;
  for (VariableId v : target.vars()) {
    const std::size_t ax = *t.scope().index_of(v);
    out_dims.push_back(t.dims()[ax]);
    plan.out_strides.push_back(strides[ax]);
  }
  std::size_t min_elim_ax = t.scope().size();
  std::size_t max_out_ax = 0;
  bool have_out = false;
  for (VariableId v : elim.vars()) {
    const std::size_t ax = *t.scope().index_of(v);
    plan.elim_dims.push_back(t.dims()[ax]);
    plan.elim_strides.push_back(strides[ax]);
    min_elim_ax = std::min(min_elim_ax, ax);
  }
  for (VariableId v : target.vars()) {
    max_out_ax = std::max(max_out_ax, *t.scope().index_of(v));
    have_out = true;
  }
  plan.out_dims = out_dims;
  plan.out_cells = product_of(out_dims);
  plan.elim_cells = product_of(plan.elim_dims);
  plan.elim_is_suffix = !have_out || elim.empty() || max_out_ax < min_elim_ax;

  // Parallelism splits the output cells, so it pays off once the total work
  // (output cells x per-cell accumulation) is large and there is more than
  // one output cell to hand out.
  std::vector<double> values(plan.out_cells);
  const bool parallel = exec == Exec::parallel && plan.out_cells > 1 &&
                        plan.out_cells * plan.elim_cells >= kParallelCutoff;
  if (parallel) {
    kernels::parallel::sum_marginal(plan, t.values().data(), values.data());
  } else {
    kernels::serial::sum_marginal(plan, t.values().data(), values.data());
  }
  return Table(target, std::move(out_dims), std::move(values));
}

bool approx_equal(double x, double y, double tol) {
  if (x == y) return true;
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

bool table_approx_equal(const Table& a, const Table& b, double tol) {
  if (a.scope() != b.scope() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!approx_equal(a[i], b[i], tol)) return false;
  }
  return true;
}

}  // namespace jtmom
