#ifndef JTMOM_TABLE_HPP_
#define JTMOM_TABLE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jtmom/scope.hpp"

namespace jtmom {

// Which kernel flavor to run. Parallel falls back to the serial loop below a
// small cell-count cutoff; both flavors are bit-identical by construction.
enum class Exec { serial, parallel };

// A dense real-valued function over the configuration space of its scope.
// Values are laid out row-major with the last scope variable varying fastest.
// Cells must be finite on construction; tables are immutable afterwards.
class Table {
 public:
  Table(Scope scope, std::vector<std::uint32_t> dims,
        std::vector<double> values);

  static Table constant(const Scope& scope, const Frames& frames, double v);
  static Table zeros(const Scope& scope, const Frames& frames);
  static Table ones(const Scope& scope, const Frames& frames);

  const Scope& scope() const { return scope_; }
  const std::vector<std::uint32_t>& dims() const { return dims_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // Value at the restriction of x to this table's scope. x must assign every
  // scope variable; a missing variable is a scope-mismatch error.
  double eval(const Configuration& x) const;

  bool operator==(const Table& other) const = default;

 private:
  Scope scope_;
  std::vector<std::uint32_t> dims_;
  std::vector<double> values_;
};

Table table_product(const Table& a, const Table& b,
                    Exec exec = Exec::parallel);
Table table_sum(const Table& a, const Table& b, Exec exec = Exec::parallel);

// Sums t over all configurations extending each target cell. Marginalizing
// to t.scope() is the identity; marginalizing to the empty scope yields the
// grand total. Per-cell accumulation runs in ascending source order, fixed
// across runs and thread counts.
Table sum_marginal(const Table& t, const Scope& target,
                   Exec exec = Exec::parallel);

// |x - y| <= tol * max(1, |x|, |y|): relative for large magnitudes with an
// absolute floor of tol near zero.
bool approx_equal(double x, double y, double tol);

// Same scope and cellwise approx_equal.
bool table_approx_equal(const Table& a, const Table& b, double tol);

}  // namespace jtmom

#endif  // JTMOM_TABLE_HPP_
