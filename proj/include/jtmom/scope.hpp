#ifndef JTMOM_SCOPE_HPP_
#define JTMOM_SCOPE_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace jtmom {

using VariableId = std::uint32_t;

// Frame cardinalities indexed by VariableId. A model with n variables uses
// exactly ids 0..n-1.
using Frames = std::vector<std::uint32_t>;

// A strictly increasing, duplicate-free set of variable ids. The empty scope
// is valid and denotes the one-point configuration space.
class Scope {
 public:
  Scope() = default;
  Scope(std::initializer_list<VariableId> vars);

  // Accepts ids in any order; throws ScopeError on duplicates.
  static Scope from_vars(std::vector<VariableId> vars);

  const std::vector<VariableId>& vars() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  VariableId operator[](std::size_t i) const { return vars_[i]; }

  bool contains(VariableId v) const;
  bool subset_of(const Scope& other) const;
  // Position of v inside this scope, if present.
  std::optional<std::size_t> index_of(VariableId v) const;

  Scope unite(const Scope& other) const;
  Scope intersect(const Scope& other) const;
  Scope difference(const Scope& other) const;

  bool operator==(const Scope& other) const = default;

  std::string to_string() const;  // "{0,2,5}" for diagnostics

 private:
  std::vector<VariableId> vars_;
};

// An assignment of one value index per scope variable.
struct Configuration {
  Scope scope;
  std::vector<std::uint32_t> values;
};

// Product of frame cardinalities over the scope; 1 for the empty scope.
std::size_t cell_count(const Frames& frames, const Scope& scope);

}  // namespace jtmom

#endif  // JTMOM_SCOPE_HPP_
