#ifndef JTMOM_VALUATION_HPP_
#define JTMOM_VALUATION_HPP_

#include <concepts>
#include <cstdint>
#include <utility>

#include "jtmom/table.hpp"

namespace jtmom {

// An ordered pair of tables on a common scope: a nonnegative probability
// part and a real moment-carrying part. The vacuous pair is (ones, zeros).
class PairPotential {
 public:
  PairPotential(Table p, Table h);

  const Table& p() const { return p_; }
  const Table& h() const { return h_; }
  const Scope& scope() const { return p_.scope(); }
  std::size_t size() const { return p_.size(); }

 private:
  Table p_;
  Table h_;
};

PairPotential vacuous_pair(const Scope& scope, const Frames& frames);

// Equality up to tol: p-parts agree cellwise (approx_equal), h-parts agree
// wherever both p-parts exceed tol. Cells whose probability is at most tol
// carry no usable h information and are ignored, which is the almost-sure
// reading of pair equality.
bool pair_equal(const PairPotential& a, const PairPotential& b, double tol);

// Combination (p_A p_B, h_A + h_B) on the union scope.
PairPotential ln_combine(const PairPotential& a, const PairPotential& b);

// Marginalization (sum p, sum(p h) / sum p) with 0/0 := 0. A nonzero
// numerator over a zero denominator cannot occur in exact arithmetic; if
// floating point produces one, the cell is set to 0 and the anomaly counter
// below is bumped.
PairPotential ln_marginalize(const PairPotential& a, const Scope& target);

// Combination (p_A p_B, h_A p_B + p_A h_B) on the union scope.
PairPotential maua_combine(const PairPotential& a, const PairPotential& b);

// Componentwise sum-marginalization of both parts.
PairPotential maua_marginalize(const PairPotential& a, const Scope& target);

// Factor lifts. Both require p_C >= 0 on the shared scope.
PairPotential lift_ln(const Table& p_c, const Table& h_c);    // (p, h)
PairPotential lift_maua(const Table& p_c, const Table& h_c);  // (p, p*h)

std::uint64_t zero_division_anomalies();
void reset_zero_division_anomalies();

// The combination/marginalization contract the message-passing engine is
// written against. Instances carry the frame map so they can mint vacuous
// elements on any scope.
template <class A>
concept ValuationAlgebra =
    requires(const A alg, const typename A::Value& v, const Scope& s,
             double tol, std::size_t n) {
      { alg.combine(v, v) } -> std::same_as<typename A::Value>;
      { alg.marginalize(v, s) } -> std::same_as<typename A::Value>;
      { alg.vacuous(s) } -> std::same_as<typename A::Value>;
      { A::scope_of(v) } -> std::convertible_to<const Scope&>;
      { A::cell_count(v) } -> std::convertible_to<std::size_t>;
      { A::combine_cost(n) } -> std::convertible_to<std::uint64_t>;
      { alg.equal(v, v, tol) } -> std::convertible_to<bool>;
    };

// combine_cost counts the scalar multiplications a combine spends per run;
// it is what makes the cost difference between the two pair algebras
// observable.

class SumProductAlgebra {
 public:
  using Value = Table;
  static constexpr const char* kName = "sum-product";

  explicit SumProductAlgebra(Frames frames) : frames_(std::move(frames)) {}

  Value combine(const Value& a, const Value& b) const {
    return table_product(a, b);
  }
  Value marginalize(const Value& v, const Scope& target) const {
    return sum_marginal(v, target);
  }
  Value vacuous(const Scope& s) const { return Table::ones(s, frames_); }
  static const Scope& scope_of(const Value& v) { return v.scope(); }
  static std::size_t cell_count(const Value& v) { return v.size(); }
  static std::uint64_t combine_cost(std::size_t result_cells) {
    return result_cells;
  }
  bool equal(const Value& a, const Value& b, double tol) const {
    return table_approx_equal(a, b, tol);
  }

 private:
  Frames frames_;
};

class LauritzenNilssonAlgebra {
 public:
  using Value = PairPotential;
  static constexpr const char* kName = "ln";

  explicit LauritzenNilssonAlgebra(Frames frames)
      : frames_(std::move(frames)) {}

  Value combine(const Value& a, const Value& b) const {
    return ln_combine(a, b);
  }
  Value marginalize(const Value& v, const Scope& target) const {
    return ln_marginalize(v, target);
  }
  Value vacuous(const Scope& s) const { return vacuous_pair(s, frames_); }
  static const Scope& scope_of(const Value& v) { return v.scope(); }
  static std::size_t cell_count(const Value& v) { return v.size(); }
  // One multiplication per result cell (the p-part product).
  static std::uint64_t combine_cost(std::size_t result_cells) {
    return result_cells;
  }
  bool equal(const Value& a, const Value& b, double tol) const {
    return pair_equal(a, b, tol);
  }

 private:
  Frames frames_;
};

class MauaAlgebra {
 public:
  using Value = PairPotential;
  static constexpr const char* kName = "maua";

  explicit MauaAlgebra(Frames frames) : frames_(std::move(frames)) {}

  Value combine(const Value& a, const Value& b) const {
    return maua_combine(a, b);
  }
  Value marginalize(const Value& v, const Scope& target) const {
    return maua_marginalize(v, target);
  }
  Value vacuous(const Scope& s) const { return vacuous_pair(s, frames_); }
  static const Scope& scope_of(const Value& v) { return v.scope(); }
  static std::size_t cell_count(const Value& v) { return v.size(); }
  // Three multiplications per result cell: p_A p_B, h_A p_B and p_A h_B.
  static std::uint64_t combine_cost(std::size_t result_cells) {
    return 3 * result_cells;
  }
  bool equal(const Value& a, const Value& b, double tol) const {
    return pair_equal(a, b, tol);
  }

 private:
  Frames frames_;
};

static_assert(ValuationAlgebra<SumProductAlgebra>);
static_assert(ValuationAlgebra<LauritzenNilssonAlgebra>);
static_assert(ValuationAlgebra<MauaAlgebra>);

}  // namespace jtmom

#endif  // JTMOM_VALUATION_HPP_
