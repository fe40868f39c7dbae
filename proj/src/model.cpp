#include "jtmom/model.hpp"

#include <algorithm>

#include "jtmom/errors.hpp"

namespace jtmom {

std::size_t Model::joint_cells() const {
  std::size_t n = 1;
  for (std::uint32_t c : frames) n *= c;
  return n;
}

const std::string& Model::name_of(VariableId v) const {
  return variable_names.at(v);
}

Model make_model(Frames frames) {
  Model m;
  m.frames = std::move(frames);
  m.variable_names.reserve(m.frames.size());
  for (std::size_t i = 0; i < m.frames.size(); ++i) {
    m.variable_names.push_back("x" + std::to_string(i));
  }
  return m;
}

namespace {

void check_factor(const Model& model, const Table& t, bool nonnegative,
                  const char* kind, std::size_t index) {
  const std::string label =
      std::string(kind) + "_factors[" + std::to_string(index) + "]";
  for (VariableId v : t.scope().vars()) {
    if (v >= model.frames.size()) {
      throw ModelError(label + " references unknown variable id " +
                       std::to_string(v));
    }
  }
  for (std::size_t ax = 0; ax < t.scope().size(); ++ax) {
    if (t.dims()[ax] != model.frames[t.scope()[ax]]) {
      throw ModelError(label + " disagrees with the frame of variable '" +
                       model.name_of(t.scope()[ax]) + "'");
    }
  }
  if (nonnegative) {
    for (double v : t.values()) {
      if (v < 0.0) throw ModelError(label + " has a negative cell");
    }
  }
}

int covering_node(const JunctionTree& tree, const Scope& scope) {
  for (int i = 0; i < static_cast<int>(tree.node_count()); ++i) {
    if (scope.subset_of(tree.node(i))) return i;
  }
  return -1;
}

}  // namespace

PreparedModel prepare(const Model& model) {
  if (model.variable_names.size() != model.frames.size()) {
    throw ModelError("one name per variable required");
  }
  for (std::uint32_t c : model.frames) {
    if (c == 0) throw ModelError("frame cardinality must be >= 1");
  }
  for (std::size_t i = 0; i < model.p_factors.size(); ++i) {
    check_factor(model, model.p_factors[i], true, "p", i);
  }
  for (std::size_t i = 0; i < model.h_factors.size(); ++i) {
    check_factor(model, model.h_factors[i], false, "h", i);
  }

  // Every declared variable must occur in some factor; otherwise the joint
  // mass function says nothing about it.
  std::vector<char> seen(model.frames.size(), 0);
  std::vector<Scope> scopes;
  scopes.reserve(model.p_factors.size() + model.h_factors.size());
  for (const Table& t : model.p_factors) scopes.push_back(t.scope());
  for (const Table& t : model.h_factors) scopes.push_back(t.scope());
  for (const Scope& s : scopes) {
    for (VariableId v : s.vars()) seen[v] = 1;
  }
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (!seen[v]) {
      throw ModelError("variable '" + model.name_of(static_cast<VariableId>(v)) +
                       "' appears in no factor scope");
    }
  }

  PreparedModel prep{model, JunctionTree({Scope{}}, {}), {}, {}, {}, {}};
  if (model.tree) {
    for (std::size_t n = 0; n < model.tree->node_count(); ++n) {
      for (VariableId v : model.tree->node(static_cast<int>(n)).vars()) {
        if (v >= model.frames.size()) {
          throw ModelError("tree node " + std::to_string(n) +
                           " references unknown variable id " +
                           std::to_string(v));
        }
      }
    }
    const ValidationReport report = validate(*model.tree);
    if (!report.ok) {
      std::string msg = report.message;
      if (report.rip_variable) {
        msg = "running intersection violated for variable '" +
              model.name_of(*report.rip_variable) + "'";
      }
      throw ModelError("invalid junction tree: " + msg);
    }
    prep.tree = *model.tree;
    for (std::size_t i = 0; i < model.p_factors.size(); ++i) {
      const int node = covering_node(prep.tree, model.p_factors[i].scope());
      if (node < 0) {
        throw ModelError("p_factors[" + std::to_string(i) +
                         "] is not covered by any tree node");
      }
      prep.p_node.push_back(node);
    }
    for (std::size_t i = 0; i < model.h_factors.size(); ++i) {
      const int node = covering_node(prep.tree, model.h_factors[i].scope());
      if (node < 0) {
        throw ModelError("h_factors[" + std::to_string(i) +
                         "] is not covered by any tree node");
      }
      prep.h_node.push_back(node);
    }
  } else {
    if (scopes.empty()) scopes.push_back(Scope{});
    BuildResult built = build_junction_tree(scopes);
    prep.tree = std::move(built.tree);
    prep.p_node.assign(built.factor_node.begin(),
                       built.factor_node.begin() + model.p_factors.size());
    prep.h_node.assign(built.factor_node.begin() + model.p_factors.size(),
                       built.factor_node.end());
  }

  // Pair h-factors with same-scope p-factors, first come first served.
  std::vector<int> h_for_p(model.p_factors.size(), -1);
  std::vector<char> h_used(model.h_factors.size(), 0);
  for (std::size_t i = 0; i < model.p_factors.size(); ++i) {
    for (std::size_t j = 0; j < model.h_factors.size(); ++j) {
      if (!h_used[j] &&
          model.h_factors[j].scope() == model.p_factors[i].scope()) {
        h_for_p[i] = static_cast<int>(j);
        h_used[j] = 1;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < model.p_factors.size(); ++i) {
    PairedFactor e;
    e.p_index = static_cast<int>(i);
    e.h_index = h_for_p[i];
    e.scope = model.p_factors[i].scope();
    prep.entries.push_back(e);
    prep.entry_node.push_back(prep.p_node[i]);
  }
  for (std::size_t j = 0; j < model.h_factors.size(); ++j) {
    if (h_used[j]) continue;
    PairedFactor e;
    e.h_index = static_cast<int>(j);
    e.scope = model.h_factors[j].scope();
    prep.entries.push_back(e);
    prep.entry_node.push_back(prep.h_node[j]);
  }
  return prep;
}

namespace {

void check_override(const PreparedModel& prep, const std::vector<int>& nodes,
                    const std::vector<Scope>& scopes) {
  if (nodes.size() != scopes.size()) {
    throw ModelError("placement override has the wrong length");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 0 ||
        nodes[i] >= static_cast<int>(prep.tree.node_count()) ||
        !scopes[i].subset_of(prep.tree.node(nodes[i]))) {
      throw ModelError("placement override does not cover factor " +
                       std::to_string(i));
    }
  }
}

}  // namespace

std::vector<Table> sum_product_potentials(const PreparedModel& prep,
                                          const std::vector<int>* node_override) {
  const std::vector<int>& placement =
      node_override ? *node_override : prep.p_node;
  if (node_override) {
    std::vector<Scope> scopes;
    for (const Table& t : prep.model.p_factors) scopes.push_back(t.scope());
    check_override(prep, placement, scopes);
  }
  std::vector<Table> pots;
  pots.reserve(prep.tree.node_count());
  for (int n = 0; n < static_cast<int>(prep.tree.node_count()); ++n) {
    pots.push_back(Table::ones(prep.tree.node(n), prep.model.frames));
  }
  for (std::size_t i = 0; i < prep.model.p_factors.size(); ++i) {
    const int n = placement[i];
    pots[n] = table_product(pots[n], prep.model.p_factors[i]);
  }
  return pots;
}

std::vector<PairPotential> pair_potentials(const PreparedModel& prep,
                                           PairLift lift,
                                           const std::vector<int>* node_override) {
  const std::vector<int>& placement =
      node_override ? *node_override : prep.entry_node;
  if (node_override) {
    std::vector<Scope> scopes;
    for (const PairedFactor& e : prep.entries) scopes.push_back(e.scope);
    check_override(prep, placement, scopes);
  }
  std::vector<PairPotential> pots;
  pots.reserve(prep.tree.node_count());
  for (int n = 0; n < static_cast<int>(prep.tree.node_count()); ++n) {
    pots.push_back(vacuous_pair(prep.tree.node(n), prep.model.frames));
  }
  for (std::size_t i = 0; i < prep.entries.size(); ++i) {
    const PairedFactor& e = prep.entries[i];
    const Table p = e.p_index >= 0
                        ? prep.model.p_factors[e.p_index]
                        : Table::ones(e.scope, prep.model.frames);
    const Table h = e.h_index >= 0
                        ? prep.model.h_factors[e.h_index]
                        : Table::zeros(e.scope, prep.model.frames);
    const PairPotential lifted =
        lift == PairLift::ln ? lift_ln(p, h) : lift_maua(p, h);
    const int n = placement[i];
    pots[n] = lift == PairLift::ln ? ln_combine(pots[n], lifted)
                                   : maua_combine(pots[n], lifted);
  }
  return pots;
}

}  // namespace jtmom
