#include "jtmom/moments.hpp"

#include <string>

#include "jtmom/errors.hpp"

namespace jtmom {
namespace {

// Ascending odometer over the full joint configuration space.
struct JointEnumerator {
  const Frames& frames;
  Configuration config;

  explicit JointEnumerator(const Model& model) : frames(model.frames) {
    std::vector<VariableId> vars(model.frames.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      vars[i] = static_cast<VariableId>(i);
    }
    config.scope = Scope::from_vars(std::move(vars));
    config.values.assign(config.scope.size(), 0);
  }

  bool advance() {
    for (std::size_t ax = config.values.size(); ax-- > 0;) {
      if (++config.values[ax] < frames[config.scope[ax]]) return true;
      config.values[ax] = 0;
    }
    return false;
  }
};

void check_cap(const Model& model, std::size_t cap, const char* what) {
  const std::size_t cells = model.joint_cells();
  if (cells > cap) {
    throw CapExceededError(std::string(what) + ": joint space of " +
                           std::to_string(cells) +
                           " configurations exceeds the cap of " +
                           std::to_string(cap));
  }
}

double eval_p(const Model& model, const Configuration& x) {
  double p = 1.0;
  for (const Table& t : model.p_factors) p *= t.eval(x);
  return p;
}

double eval_h(const Model& model, const Configuration& x) {
  double h = 0.0;
  for (const Table& t : model.h_factors) h += t.eval(x);
  return h;
}

// Cell index of x restricted to a target scope, row-major last-fastest.
std::size_t restricted_index(const Model& model, const Configuration& x,
                             const Scope& target) {
  std::size_t idx = 0;
  for (VariableId v : target.vars()) {
    idx = idx * model.frames[v] + x.values[*x.scope.index_of(v)];
  }
  return idx;
}

MomentResult finish_pair_result(const PairPotential& empty_marginal,
                                bool divide, const EngineStats& stats) {
  MomentResult out;
  out.Z = empty_marginal.p()[0];
  out.raw_moment = empty_marginal.h()[0];
  if (divide) {
    out.m = out.Z == 0.0 ? 0.0 : out.raw_moment / out.Z;
  } else {
    out.m = out.raw_moment;
  }
  out.stats = stats;
  return out;
}

}  // namespace

double brute_force_moment(const Model& model, std::size_t cap) {
  check_cap(model, cap, "brute_force_moment");
  JointEnumerator e(model);
  double total = 0.0;
  do {
    total += eval_p(model, e.config) * eval_h(model, e.config);
  } while (e.advance());
  return total;
}

double brute_force_mass(const Model& model, std::size_t cap) {
  check_cap(model, cap, "brute_force_mass");
  JointEnumerator e(model);
  double total = 0.0;
  do {
    total += eval_p(model, e.config);
  } while (e.advance());
  return total;
}

Table brute_force_moment_potential(const Model& model, const Scope& target,
                                   std::size_t cap) {
  check_cap(model, cap, "brute_force_moment_potential");
  std::vector<double> cells(cell_count(model.frames, target), 0.0);
  JointEnumerator e(model);
  do {
    cells[restricted_index(model, e.config, target)] +=
        eval_p(model, e.config) * eval_h(model, e.config);
  } while (e.advance());
  std::vector<std::uint32_t> dims;
  for (VariableId v : target.vars()) dims.push_back(model.frames[v]);
  return Table(target, std::move(dims), std::move(cells));
}

Table brute_force_marginal(const Model& model, const Scope& target,
                           std::size_t cap) {
  check_cap(model, cap, "brute_force_marginal");
  std::vector<double> cells(cell_count(model.frames, target), 0.0);
  JointEnumerator e(model);
  do {
    cells[restricted_index(model, e.config, target)] += eval_p(model, e.config);
  } while (e.advance());
  std::vector<std::uint32_t> dims;
  for (VariableId v : target.vars()) dims.push_back(model.frames[v]);
  return Table(target, std::move(dims), std::move(cells));
}

MomentResult moment_all_vertices(const PreparedModel& prep,
                                 std::vector<Table>* marginals_out) {
  MessagePassing<SumProductAlgebra> engine(
      SumProductAlgebra(prep.model.frames), prep.tree,
      sum_product_potentials(prep), /*eager_free=*/false);
  const std::vector<Table> marginals = engine.all_marginals();

  double raw = 0.0;
  for (std::size_t j = 0; j < prep.model.h_factors.size(); ++j) {
    const Table& h = prep.model.h_factors[j];
    const Table p_down = sum_marginal(marginals[prep.h_node[j]], h.scope());
    for (std::size_t i = 0; i < h.size(); ++i) raw += h[i] * p_down[i];
  }
  const Table z = sum_marginal(marginals[0], Scope{});

  MomentResult out;
  out.Z = z[0];
  out.raw_moment = raw;
  out.m = out.Z == 0.0 ? 0.0 : raw / out.Z;
  out.stats = engine.stats();
  out.marginals_retained = marginals.size();
  if (marginals_out) *marginals_out = marginals;
  return out;
}

MomentResult moment_ln(const PreparedModel& prep, int root) {
  MessagePassing<LauritzenNilssonAlgebra> engine(
      LauritzenNilssonAlgebra(prep.model.frames), prep.tree,
      pair_potentials(prep, PairLift::ln), /*eager_free=*/true);
  const PairPotential result = engine.normalize(root);
  // The h-part already carries the division by Z.
  return finish_pair_result(result, /*divide=*/false, engine.stats());
}

MomentResult moment_maua(const PreparedModel& prep, int root) {
  MessagePassing<MauaAlgebra> engine(
      MauaAlgebra(prep.model.frames), prep.tree,
      pair_potentials(prep, PairLift::maua), /*eager_free=*/true);
  const PairPotential result = engine.normalize(root);
  return finish_pair_result(result, /*divide=*/true, engine.stats());
}

Table conditional_expectation(const PreparedModel& prep, const Scope& target) {
  int cover = -1;
  for (int i = 0; i < static_cast<int>(prep.tree.node_count()); ++i) {
    if (target.subset_of(prep.tree.node(i))) {
      cover = i;
      break;
    }
  }
  if (cover < 0) {
    throw QueryError("no junction tree node covers the query scope " +
                     target.to_string());
  }
  MessagePassing<LauritzenNilssonAlgebra> engine(
      LauritzenNilssonAlgebra(prep.model.frames), prep.tree,
      pair_potentials(prep, PairLift::ln), /*eager_free=*/true);
  const PairPotential at_cover = engine.collect(cover);
  return ln_marginalize(at_cover, target).h();
}

}  // namespace jtmom
