#ifndef JTMOM_MODEL_IO_HPP_
#define JTMOM_MODEL_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jtmom/engine.hpp"
#include "jtmom/model.hpp"

namespace jtmom {

// Parses the JSON model format:
//   {
//     "variables": [{"name": "u", "cardinality": 2}, ...],
//     "p_factors": [{"scope": ["u","v"], "values": [..]}, ...],
//     "h_factors": [...],
//     "tree": {"nodes": [["u","v"], ...], "edges": [[0,1], ...]}   (optional)
//   }
// Values are row-major with the last listed scope variable fastest; scopes
// may list variables in any order and are brought to canonical id order by
// permuting the axes. Throws ModelError on any structural problem.
Model load_model(const std::string& path);
Model parse_model(const std::string& json_text);

struct NodeMarginalReport {
  std::vector<std::string> node;  // variable names
  std::vector<double> values;
};

struct ConditionalReport {
  std::vector<std::string> scope;
  std::vector<double> expectation;
};

struct StatsReport {
  std::uint64_t messages = 0;
  std::uint64_t peak_live = 0;
  std::uint64_t combine_ops = 0;
};

struct ResultReport {
  std::string algorithm;
  double Z = 0.0;
  double m = 0.0;
  std::optional<std::vector<NodeMarginalReport>> per_node_marginals;
  std::optional<ConditionalReport> conditional;
  std::optional<StatsReport> stats;
};

// Deterministic JSON with fixed key order; numbers carry 17 significant
// digits so they round-trip.
std::string render_report(const ResultReport& report);

// {"validated": true, "nodes": n, "edges": e, "stats": {all zero}}
std::string render_validation_report(std::size_t nodes, std::size_t edges);

}  // namespace jtmom

#endif  // JTMOM_MODEL_IO_HPP_
