#include "jtmom/jtree.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "jtmom/errors.hpp"

namespace jtmom {

JunctionTree::JunctionTree(std::vector<Scope> nodes,
                           std::vector<std::pair<int, int>> edges)
    : nodes_(std::move(nodes)) {
  const int n = static_cast<int>(nodes_.size());
  edges_.reserve(edges.size());
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw ModelError("edge endpoint out of range");
    }
    if (i == j) throw ModelError("self-loop edge in junction tree");
    edges_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw ModelError("duplicate edge in junction tree");
  }
  separators_.reserve(edges_.size());
  adjacency_.assign(nodes_.size(), {});
  for (auto [i, j] : edges_) {
    separators_.push_back(nodes_[i].intersect(nodes_[j]));
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());
}

const Scope& JunctionTree::node(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= nodes_.size()) {
    throw std::out_of_range("node index out of range");
  }
  return nodes_[i];
}

const std::vector<int>& JunctionTree::neighbors(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= adjacency_.size()) {
    throw std::out_of_range("node index out of range");
  }
  return adjacency_[i];
}

const Scope& JunctionTree::separator(std::size_t edge_id) const {
  return separators_.at(edge_id);
}

std::optional<std::size_t> JunctionTree::edge_between(int i, int j) const {
  const auto key = std::make_pair(std::min(i, j), std::max(i, j));
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

const Scope& JunctionTree::separator_between(int i, int j) const {
  const auto eid = edge_between(i, j);
  if (!eid) throw ModelError("nodes are not adjacent");
  return separators_[*eid];
}

ValidationReport validate(const JunctionTree& tree) {
  ValidationReport report;
  const std::size_t n = tree.node_count();
  if (n == 0) {
    report.ok = false;
    report.message = "junction tree has no nodes";
    return report;
  }
  if (tree.edge_count() != n - 1) {
    report.ok = false;
    report.message = "edge count " + std::to_string(tree.edge_count()) +
                     " does not match a tree over " + std::to_string(n) +
                     " nodes";
    return report;
  }
  // n-1 edges and full connectivity rule out cycles.
  std::vector<char> seen(n, 0);
  std::vector<int> work{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!work.empty()) {
    const int cur = work.back();
    work.pop_back();
    for (int nb : tree.neighbors(cur)) {
      if (!seen[nb]) {
        seen[nb] = 1;
        ++reached;
        work.push_back(nb);
      }
    }
  }
  if (reached != n) {
    report.ok = false;
    report.message = "junction tree is not connected";
    return report;
  }

  // Running intersection: the nodes containing u must stay connected when
  // only edges whose separator contains u are kept.
  std::set<VariableId> all_vars;
  for (std::size_t i = 0; i < n; ++i) {
    all_vars.insert(tree.node(static_cast<int>(i)).vars().begin(),
                    tree.node(static_cast<int>(i)).vars().end());
  }
  for (VariableId u : all_vars) {
    int start = -1;
    std::size_t holding = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (tree.node(static_cast<int>(i)).contains(u)) {
        if (start < 0) start = static_cast<int>(i);
        ++holding;
      }
    }
    if (holding <= 1) continue;
    std::fill(seen.begin(), seen.end(), 0);
    work.assign(1, start);
    seen[start] = 1;
    std::size_t reached_u = 1;
    while (!work.empty()) {
      const int cur = work.back();
      work.pop_back();
      for (int nb : tree.neighbors(cur)) {
        if (!seen[nb] && tree.node(nb).contains(u)) {
          seen[nb] = 1;
          ++reached_u;
          work.push_back(nb);
        }
      }
    }
    if (reached_u != holding) {
      report.ok = false;
      report.rip_variable = u;
      report.message = "running intersection violated for variable " +
                       std::to_string(u);
      return report;
    }
  }
  return report;
}

namespace {

// Union-find for the spanning tree step.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

BuildResult build_junction_tree(const std::vector<Scope>& scopes) {
  if (scopes.empty()) {
    throw ModelError("junction tree construction needs at least one scope");
  }

  Scope universe;
  for (const Scope& s : scopes) universe = universe.unite(s);

  // Union graph: a clique per factor scope, as adjacency sets.
  std::vector<VariableId> vars = universe.vars();
  std::vector<std::set<VariableId>> adj;
  std::vector<std::size_t> pos(vars.empty() ? 0 : vars.back() + 1, 0);
  adj.resize(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = i;
  for (const Scope& s : scopes) {
    for (VariableId a : s.vars()) {
      for (VariableId b : s.vars()) {
        if (a != b) adj[pos[a]].insert(b);
      }
    }
  }

  // Min-fill elimination; record the clique {v} + remaining neighbors of v.
  std::vector<char> eliminated(vars.size(), 0);
  std::vector<Scope> elim_cliques;
  for (std::size_t round = 0; round < vars.size(); ++round) {
    std::size_t best = vars.size();
    std::size_t best_fill = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (eliminated[i]) continue;
      std::size_t fill = 0;
      const auto& nbrs = adj[i];
      for (auto it = nbrs.begin(); it != nbrs.end(); ++it) {
        auto jt = it;
        for (++jt; jt != nbrs.end(); ++jt) {
          if (!adj[pos[*it]].count(*jt)) ++fill;
        }
      }
      if (best == vars.size() || fill < best_fill) {
        best = i;
        best_fill = fill;
      }
    }
    std::vector<VariableId> clique{vars[best]};
    clique.insert(clique.end(), adj[best].begin(), adj[best].end());
    elim_cliques.push_back(Scope::from_vars(std::move(clique)));
    for (VariableId a : adj[best]) {
      for (VariableId b : adj[best]) {
        if (a != b) adj[pos[a]].insert(b);
      }
      adj[pos[a]].erase(vars[best]);
    }
    adj[best].clear();
    eliminated[best] = 1;
  }

  // Keep the maximal cliques, in elimination order. A later clique never
  // contains an earlier one (the earlier eliminated variable is gone), so a
  // subset test against the kept prefix suffices.
  std::vector<Scope> cliques;
  for (const Scope& c : elim_cliques) {
    bool contained = false;
    for (const Scope& kept : cliques) {
      if (c.subset_of(kept)) {
        contained = true;
        break;
      }
    }
    if (!contained) cliques.push_back(c);
  }
  if (cliques.empty()) cliques.push_back(Scope{});  // no variables at all

  // Maximum-weight spanning tree on separator cardinality, Kruskal with
  // (i, j) lexicographic tie-breaking. Zero-weight edges still connect
  // disjoint components.
  struct Candidate {
    std::size_t weight;
    int i, j;
  };
  std::vector<Candidate> candidates;
  const int m = static_cast<int>(cliques.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      candidates.push_back({cliques[i].intersect(cliques[j]).size(), i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              if (a.i != b.i) return a.i < b.i;
              return a.j < b.j;
            });
  DisjointSets ds(cliques.size());
  std::vector<std::pair<int, int>> edges;
  for (const Candidate& c : candidates) {
    if (static_cast<int>(edges.size()) == m - 1) break;
    if (ds.unite(c.i, c.j)) edges.emplace_back(c.i, c.j);
  }

  JunctionTree tree(std::move(cliques), std::move(edges));

  BuildResult result{std::move(tree), {}};
  result.factor_node.reserve(scopes.size());
  for (const Scope& s : scopes) {
    int node = -1;
    for (int i = 0; i < static_cast<int>(result.tree.node_count()); ++i) {
      if (s.subset_of(result.tree.node(i))) {
        node = i;
        break;
      }
    }
    if (node < 0) {
      // Cannot happen: every input scope is a clique of the triangulated
      // graph and thus inside some maximal clique.
      throw ModelError("internal: factor scope not covered by any clique");
    }
    result.factor_node.push_back(node);
  }
  return result;
}

}  // namespace jtmom
