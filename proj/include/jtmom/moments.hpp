#ifndef JTMOM_MOMENTS_HPP_
#define JTMOM_MOMENTS_HPP_

#include <cstddef>

#include "jtmom/engine.hpp"
#include "jtmom/model.hpp"

namespace jtmom {

struct MomentResult {
  double Z = 0.0;          // total mass of the factorized p
  double m = 0.0;          // first-order moment, normalized (0/0 := 0)
  double raw_moment = 0.0; // the h output before any final division
  EngineStats stats;
  std::size_t marginals_retained = 0;  // all-vertices strategy only
};

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

// Exact sum of prod(p-factors) * sum(h-factors) over every joint
// configuration, in ascending configuration order. Refuses models whose
// joint space exceeds cap; enumeration is for desk-scale cross-checking.
double brute_force_moment(const Model& model,
                          std::size_t cap = kDefaultEnumerationCap);

// Joint mass by the same enumeration.
double brute_force_mass(const Model& model,
                        std::size_t cap = kDefaultEnumerationCap);

// Partial sums of p*h over all configurations extending each cell of the
// target scope.
Table brute_force_moment_potential(const Model& model, const Scope& target,
                                   std::size_t cap = kDefaultEnumerationCap);

// Marginal of the joint p on the target scope, by enumeration.
Table brute_force_marginal(const Model& model, const Scope& target,
                           std::size_t cap = kDefaultEnumerationCap);

// Marginals at every node with the sum-product algebra, then
// sum_C sum_{x_C} h_C * p^(down C); every node marginal is held live at
// once, which is precisely the memory cost this strategy trades away.
// marginals_out, when non-null, receives the per-node marginals.
MomentResult moment_all_vertices(const PreparedModel& prep,
                                 std::vector<Table>* marginals_out = nullptr);

// Normalization-problem route with (p, h) lifting; the h-part of the empty
// marginal is already the normalized moment.
MomentResult moment_ln(const PreparedModel& prep, int root = 0);

// Normalization-problem route with (p, p*h) lifting; one division by Z at
// the very end (0/0 := 0).
MomentResult moment_maua(const PreparedModel& prep, int root = 0);

// E[h | x_C] as a table on C: a single-vertex collect at the covering node
// under the (p, h) pair algebra, marginalized onto C. Zero-probability
// cells are 0 by convention. Throws QueryError when no node covers C.
Table conditional_expectation(const PreparedModel& prep, const Scope& target);

}  // namespace jtmom

#endif  // JTMOM_MOMENTS_HPP_
