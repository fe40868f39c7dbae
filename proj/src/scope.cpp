#include "jtmom/scope.hpp"

#include <algorithm>
#include <sstream>

#include "jtmom/errors.hpp"

namespace jtmom {

Scope::Scope(std::initializer_list<VariableId> vars)
    : Scope(from_vars(std::vector<VariableId>(vars))) {}

Scope Scope::from_vars(std::vector<VariableId> vars) {
  std::sort(vars.begin(), vars.end());
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
    throw ScopeError("duplicate variable id in scope");
  }
  Scope s;
  s.vars_ = std::move(vars);
  return s;
}

bool Scope::contains(VariableId v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

bool Scope::subset_of(const Scope& other) const {
  return std::includes(other.vars_.begin(), other.vars_.end(), vars_.begin(),
                       vars_.end());
}

std::optional<std::size_t> Scope::index_of(VariableId v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

Scope Scope::unite(const Scope& other) const {
  Scope out;
  out.vars_.reserve(vars_.size() + other.vars_.size());
  std::set_union(vars_.begin(), vars_.end(), other.vars_.begin(),
                 other.vars_.end(), std::back_inserter(out.vars_));
  return out;
}

Scope Scope::intersect(const Scope& other) const {
  Scope out;
  std::set_intersection(vars_.begin(), vars_.end(), other.vars_.begin(),
                        other.vars_.end(), std::back_inserter(out.vars_));
  return out;
}

Scope Scope::difference(const Scope& other) const {
  Scope out;
  std::set_difference(vars_.begin(), vars_.end(), other.vars_.begin(),
                      other.vars_.end(), std::back_inserter(out.vars_));
  return out;
}

std::string Scope::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) os << ',';
    os << vars_[i];
  }
  os << '}';
  return os.str();
}

std::size_t cell_count(const Frames& frames, const Scope& scope) {
  std::size_t n = 1;
  for (VariableId v : scope.vars()) {
    if (v >= frames.size()) throw ScopeError("variable id out of range");
    if (frames[v] == 0) throw DomainError("frame cardinality must be >= 1");
    n *= frames[v];
  }
  return n;
}

}  // namespace jtmom
