#ifndef JTMOM_ENGINE_HPP_
#define JTMOM_ENGINE_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jtmom/errors.hpp"
#include "jtmom/jtree.hpp"
#include "jtmom/valuation.hpp"

namespace jtmom {

struct EngineStats {
  std::uint64_t messages_computed = 0;
  // Peak and current number of simultaneously full mailboxes.
  std::uint64_t peak_live = 0;
  std::uint64_t live = 0;
  // Scalar multiplications spent in combine operations.
  std::uint64_t combine_ops = 0;
  // Cells written by marginalizations.
  std::uint64_t marginal_cells = 0;
};

// Shafer-Shenoy message passing over any valuation algebra.
//
// Messages travel through per-directed-edge mailboxes. A message from A to B
// may be computed once, and only when every other A-incoming mailbox is
// full; the store enforces both. Combination order is fixed (the node
// potential first, then incoming messages by ascending neighbor index), so
// results are bit-identical across runs and thread counts.
//
// An instance runs one schedule: one of collect / all_marginals / normalize,
// or a hand-driven sequence of send() calls.
template <class A>
  requires ValuationAlgebra<A>
class MessagePassing {
 public:
  using Value = typename A::Value;

  // node_potentials must hold one valuation per tree node, each scoped
  // inside the node scope. With eager_free, a message is freed as soon as
  // its consumer has been computed (collect-style schedules only).
  MessagePassing(A algebra, const JunctionTree& tree,
                 std::vector<Value> node_potentials, bool eager_free = false)
      : alg_(std::move(algebra)),
        tree_(&tree),
        pots_(std::move(node_potentials)),
        eager_free_(eager_free) {
    if (pots_.size() != tree_->node_count()) {
      throw ModelError("one potential per junction tree node required");
    }
    boxes_.resize(2 * tree_->edge_count());
  }

  // Computes the message from -> to by absorption: combine the node
  // potential with every other incoming message, then marginalize onto the
  // separator. For a leaf this is just the marginalized node potential.
  const Value& send(int from, int to) {
    Box& box = mailbox(from, to);
    if (box.state == BoxState::full) {
      throw ProtocolError(edge_name(from, to) + " already computed");
    }
    if (box.state == BoxState::freed) {
      throw ProtocolError(edge_name(from, to) + " was already freed");
    }
    std::optional<Value> acc;
    for (int nb : tree_->neighbors(from)) {
      if (nb == to) continue;
      const Box& in = mailbox(nb, from);
      if (in.state != BoxState::full) {
        throw ProtocolError("prerequisite " + edge_name(nb, from) +
                            " is not full");
      }
      acc = acc ? combine_counted(*acc, *in.value)
                : combine_counted(pots_[from], *in.value);
    }
    Value msg = marginalize_counted(acc ? *acc : pots_[from],
                                    tree_->separator_between(from, to));
    box.value.emplace(std::move(msg));
    box.state = BoxState::full;
    ++stats_.messages_computed;
    ++stats_.live;
    stats_.peak_live = std::max(stats_.peak_live, stats_.live);
    if (eager_free_) {
      for (int nb : tree_->neighbors(from)) {
        if (nb != to) free_box(mailbox(nb, from));
      }
    }
    return *box.value;
  }

  bool has_message(int from, int to) const {
    return mailbox(from, to).state == BoxState::full;
  }

  const Value& message(int from, int to) const {
    const Box& box = mailbox(from, to);
    if (box.state != BoxState::full) {
      throw ProtocolError(edge_name(from, to) + " is not full");
    }
    return *box.value;
  }

  // Single-vertex solution at root: pass messages leaf-inward, then combine
  // the root potential with everything the root received. Exactly
  // edge_count() messages are computed.
  Value collect(int root) {
    begin_run();
    const Traversal t = traverse(root);
    for (int n : t.order(/*deepest_first=*/true)) {
      if (n != root) send(n, t.parent[n]);
    }
    Value acc = root_combination(root);
    if (eager_free_) {
      for (int nb : tree_->neighbors(root)) free_box(mailbox(nb, root));
    }
    return acc;
  }

  // Marginal at every node via an inward pass to node 0 and an outward pass
  // back; 2 * edge_count() messages, all retained.
  std::vector<Value> all_marginals() {
    begin_run();
    const bool saved_eager = eager_free_;
    eager_free_ = false;
    const int root = 0;
    const Traversal t = traverse(root);
    for (int n : t.order(/*deepest_first=*/true)) {
      if (n != root) send(n, t.parent[n]);
    }
    for (int n : t.order(/*deepest_first=*/false)) {
      if (n != root) send(t.parent[n], n);
    }
    std::vector<Value> marginals;
    marginals.reserve(tree_->node_count());
    for (int n = 0; n < static_cast<int>(tree_->node_count()); ++n) {
      marginals.push_back(root_combination(n));
    }
    eager_free_ = saved_eager;
    return marginals;
  }

  // Marginalization of the joint potential to the empty scope, computed as
  // collect(root) marginalized onto the empty scope.
  Value normalize(int root) {
    Value at_root = collect(root);
    return marginalize_counted(at_root, Scope{});
  }

  const EngineStats& stats() const { return stats_; }

 private:
  enum class BoxState { empty, full, freed };
  struct Box {
    std::optional<Value> value;
    BoxState state = BoxState::empty;
  };

  Box& mailbox(int from, int to) {
    return boxes_[slot(from, to)];
  }
  const Box& mailbox(int from, int to) const { return boxes_[slot(from, to)]; }

  std::size_t slot(int from, int to) const {
    const auto eid = tree_->edge_between(from, to);
    if (!eid) throw ProtocolError(edge_name(from, to) + ": not an edge");
    return 2 * *eid + (from < to ? 0 : 1);
  }

  static std::string edge_name(int from, int to) {
    return "message " + std::to_string(from) + "->" + std::to_string(to);
  }

  void free_box(Box& box) {
    if (box.state != BoxState::full) return;
    box.value.reset();
    box.state = BoxState::freed;
    --stats_.live;
  }

  Value combine_counted(const Value& a, const Value& b) {
    Value out = alg_.combine(a, b);
    stats_.combine_ops += A::combine_cost(A::cell_count(out));
    return out;
  }

  Value marginalize_counted(const Value& v, const Scope& target) {
    Value out = alg_.marginalize(v, target);
    stats_.marginal_cells += A::cell_count(out);
    return out;
  }

  Value root_combination(int node) {
    std::optional<Value> acc;
    for (int nb : tree_->neighbors(node)) {
      const Box& in = mailbox(nb, node);
      if (in.state != BoxState::full) {
        throw ProtocolError("prerequisite " + edge_name(nb, node) +
                            " is not full");
      }
      acc = acc ? combine_counted(*acc, *in.value)
                : combine_counted(pots_[node], *in.value);
    }
    return acc ? std::move(*acc) : pots_[node];
  }

  void begin_run() {
    if (ran_) throw ProtocolError("engine instance already ran a schedule");
    ran_ = true;
  }

  // The tree hung from a root: parent per node (root maps to itself) and
  // node orderings by depth. Built with an explicit work list; ties between
  // equal depths break by node index, keeping schedules deterministic.
  struct Traversal {
    std::vector<int> parent;
    std::vector<int> depth;

    std::vector<int> order(bool deepest_first) const {
      std::vector<int> out(parent.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
      std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
        return deepest_first ? depth[a] > depth[b] : depth[a] < depth[b];
      });
      return out;
    }
  };

  Traversal traverse(int root) const {
    const int n = static_cast<int>(tree_->node_count());
    if (root < 0 || root >= n) throw std::out_of_range("root out of range");
    Traversal t{std::vector<int>(n, -1), std::vector<int>(n, 0)};
    t.parent[root] = root;
    std::vector<int> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int cur = queue[head];
      for (int nb : tree_->neighbors(cur)) {
        if (t.parent[nb] < 0) {
          t.parent[nb] = cur;
          t.depth[nb] = t.depth[cur] + 1;
          queue.push_back(nb);
        }
      }
    }
    for (int p : t.parent) {
      if (p < 0) throw ModelError("junction tree is not connected");
    }
    return t;
  }

  A alg_;
  const JunctionTree* tree_;
  std::vector<Value> pots_;
  std::vector<Box> boxes_;
  EngineStats stats_;
  bool eager_free_;
  bool ran_ = false;
};

}  // namespace jtmom

#endif  // JTMOM_ENGINE_HPP_
