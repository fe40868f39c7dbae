#ifndef JTMOM_JTREE_HPP_
#define JTMOM_JTREE_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jtmom/scope.hpp"

namespace jtmom {

// A tree over variable-set nodes with per-edge separators. Construction only
// checks that edge endpoints are in range and canonicalizes the edge list;
// call validate() to check the tree shape and the running intersection
// property.
class JunctionTree {
 public:
  JunctionTree(std::vector<Scope> nodes, std::vector<std::pair<int, int>> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Scope& node(int i) const;
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Neighbor indices of node i, ascending. Throws on out-of-range i.
  const std::vector<int>& neighbors(int i) const;

  const Scope& separator(std::size_t edge_id) const;
  // Edge id joining i and j, if they are adjacent.
  std::optional<std::size_t> edge_between(int i, int j) const;
  const Scope& separator_between(int i, int j) const;

 private:
  std::vector<Scope> nodes_;
  std::vector<std::pair<int, int>> edges_;  // first < second, sorted
  std::vector<Scope> separators_;
  std::vector<std::vector<int>> adjacency_;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  // First variable whose nodes do not induce a connected subtree, if that is
  // the violation found.
  std::optional<VariableId> rip_variable;
};

// Checks that the edges form a tree over all nodes and that for every
// variable the nodes containing it induce a connected subtree.
ValidationReport validate(const JunctionTree& tree);

struct BuildResult {
  JunctionTree tree;
  // Covering node per input scope (the lowest-index covering clique).
  std::vector<int> factor_node;
};

// Builds a junction tree covering every input scope: clique-union graph,
// min-fill elimination (ties to the lowest variable id), maximal cliques in
// elimination order, then a maximum separator-cardinality spanning tree with
// lexicographic tie-breaking. Deterministic for identical input.
BuildResult build_junction_tree(const std::vector<Scope>& scopes);

}  // namespace jtmom

#endif  // JTMOM_JTREE_HPP_
