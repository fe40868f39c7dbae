#ifndef JTMOM_MODEL_HPP_
#define JTMOM_MODEL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "jtmom/jtree.hpp"
#include "jtmom/table.hpp"
#include "jtmom/valuation.hpp"

namespace jtmom {

// A multiplicatively factorized mass function together with an additively
// factorized function whose first-order moment is wanted. The tree is
// optional; prepare() builds one from the factor scopes when absent.
struct Model {
  std::vector<std::string> variable_names;
  Frames frames;
  std::vector<Table> p_factors;  // nonnegative
  std::vector<Table> h_factors;
  std::optional<JunctionTree> tree;

  std::size_t joint_cells() const;
  const std::string& name_of(VariableId v) const;
};

// Names x0..x{n-1}.
Model make_model(Frames frames);

// One engine input per factor: an h-factor is paired with a p-factor of
// identical scope when one is free, an unpaired p-factor gets a zero
// h-part and an unpaired h-factor a ones p-part. Either completion lifts
// identically under both pair algebras.
struct PairedFactor {
  int p_index = -1;  // -1: synthesized ones
  int h_index = -1;  // -1: synthesized zeros
  Scope scope;
};

// A model with a validated tree and deterministic factor placement (every
// factor sits at its lowest-index covering node).
struct PreparedModel {
  Model model;
  JunctionTree tree;
  std::vector<int> p_node;              // per p-factor
  std::vector<int> h_node;              // per h-factor
  std::vector<PairedFactor> entries;    // pair-algebra inputs
  std::vector<int> entry_node;          // per entry
};

// Validates an explicit tree or builds one over all factor scopes, checks
// coverage of every factor and every declared variable, and fixes factor
// placement. Throws ModelError with a named diagnosis on any violation.
PreparedModel prepare(const Model& model);

// Node potentials for the sum-product algebra over the p-factors alone.
// node_override, when given, replaces the default placement (it must still
// cover every factor).
std::vector<Table> sum_product_potentials(
    const PreparedModel& prep,
    const std::vector<int>* node_override = nullptr);

enum class PairLift { ln, maua };

// Node potentials for a pair algebra: every entry is lifted and combined
// into its node's vacuous pair, in entry order.
std::vector<PairPotential> pair_potentials(
    const PreparedModel& prep, PairLift lift,
    const std::vector<int>* node_override = nullptr);

}  // namespace jtmom

#endif  // JTMOM_MODEL_HPP_
