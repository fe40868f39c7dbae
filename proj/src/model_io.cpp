#include "jtmom/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "jtmom/errors.hpp"

namespace jtmom {
namespace {

using nlohmann::json;

double to_finite_double(const json& j, const std::string& where) {
  if (!j.is_number()) throw ModelError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ModelError(where + ": non-finite number");
  return v;
}

// Reorders a table given in listed-scope layout (last listed variable
// fastest) into canonical ascending-id order.
Table canonicalize(const std::vector<VariableId>& listed,
                   const Frames& frames, std::vector<double> values,
                   const std::string& where) {
  Scope scope = Scope::from_vars(listed);
  std::vector<std::uint32_t> dims;
  dims.reserve(scope.size());
  for (VariableId v : scope.vars()) dims.push_back(frames[v]);
  if (values.size() != cell_count(frames, scope)) {
    throw ModelError(where + ": got " + std::to_string(values.size()) +
                     " values for a scope with " +
                     std::to_string(cell_count(frames, scope)) + " cells");
  }

  bool sorted = true;
  for (std::size_t i = 1; i < listed.size(); ++i) {
    if (listed[i - 1] > listed[i]) sorted = false;
  }
  if (sorted) {
    return Table(std::move(scope), std::move(dims), std::move(values));
  }

  // axis k of the listed layout corresponds to canonical axis perm[k]
  std::vector<std::size_t> perm(listed.size());
  for (std::size_t k = 0; k < listed.size(); ++k) {
    perm[k] = *scope.index_of(listed[k]);
  }
  std::vector<std::size_t> strides(scope.size(), 1);
  for (std::size_t ax = scope.size(); ax-- > 1;) {
    strides[ax - 1] = strides[ax] * dims[ax];
  }
  std::vector<double> out(values.size());
  std::vector<std::uint32_t> digit(listed.size(), 0);
  std::size_t dst = 0;
  for (std::size_t src = 0; src < values.size(); ++src) {
    out[dst] = values[src];
    for (std::size_t k = listed.size(); k-- > 0;) {
      ++digit[k];
      dst += strides[perm[k]];
      if (digit[k] < frames[listed[k]]) break;
      dst -= static_cast<std::size_t>(frames[listed[k]]) * strides[perm[k]];
      digit[k] = 0;
    }
  }
  return Table(std::move(scope), std::move(dims), std::move(out));
}

std::vector<VariableId> scope_ids(const json& names,
                                  const std::map<std::string, VariableId>& ids,
                                  const std::string& where) {
  if (!names.is_array()) throw ModelError(where + ": scope must be an array");
  std::vector<VariableId> out;
  out.reserve(names.size());
  for (const json& n : names) {
    if (!n.is_string()) {
      throw ModelError(where + ": scope entries must be variable names");
    }
    const auto it = ids.find(n.get<std::string>());
    if (it == ids.end()) {
      throw ModelError(where + ": unknown variable '" + n.get<std::string>() +
                       "'");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<Table> parse_factors(const json& doc, const char* key,
                                 const std::map<std::string, VariableId>& ids,
                                 const Frames& frames, bool nonnegative) {
  std::vector<Table> out;
  if (!doc.contains(key)) return out;
  const json& factors = doc.at(key);
  if (!factors.is_array()) {
    throw ModelError(std::string(key) + " must be an array");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    const json& f = factors[i];
    if (!f.is_object() || !f.contains("scope") || !f.contains("values")) {
      throw ModelError(where + ": expected {\"scope\": [...], \"values\": [...]}");
    }
    const std::vector<VariableId> listed = scope_ids(f.at("scope"), ids, where);
    if (!f.at("values").is_array()) {
      throw ModelError(where + ": values must be an array");
    }
    std::vector<double> values;
    values.reserve(f.at("values").size());
    for (const json& v : f.at("values")) {
      values.push_back(to_finite_double(v, where));
    }
    if (nonnegative) {
      for (double v : values) {
        if (v < 0.0) throw ModelError(where + ": negative p value");
      }
    }
    out.push_back(canonicalize(listed, frames, std::move(values), where));
  }
  return out;
}

void append_number(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_string_array(std::string& out,
                         const std::vector<std::string>& items) {
  out += '[';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += '"';
    out += items[i];
    out += '"';
  }
  out += ']';
}

void append_number_array(std::string& out, const std::vector<double>& items) {
  out += '[';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    append_number(out, items[i]);
  }
  out += ']';
}

}  // namespace

Model parse_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("variables")) {
    throw ModelError("model file needs a \"variables\" array");
  }

  Model model;
  std::map<std::string, VariableId> ids;
  const json& vars = doc.at("variables");
  if (!vars.is_array() || vars.empty()) {
    throw ModelError("\"variables\" must be a nonempty array");
  }
  for (const json& v : vars) {
    if (!v.is_object() || !v.contains("name") || !v.contains("cardinality")) {
      throw ModelError("variables entries need \"name\" and \"cardinality\"");
    }
    const std::string name = v.at("name").get<std::string>();
    if (!v.at("cardinality").is_number_integer() ||
        v.at("cardinality").get<std::int64_t>() < 1) {
      throw ModelError("variable '" + name + "' needs cardinality >= 1");
    }
    if (ids.count(name)) {
      throw ModelError("duplicate variable name '" + name + "'");
    }
    ids[name] = static_cast<VariableId>(model.frames.size());
    model.variable_names.push_back(name);
    model.frames.push_back(v.at("cardinality").get<std::uint32_t>());
  }

  model.p_factors = parse_factors(doc, "p_factors", ids, model.frames, true);
  model.h_factors = parse_factors(doc, "h_factors", ids, model.frames, false);

  if (doc.contains("tree")) {
    const json& tree = doc.at("tree");
    if (!tree.is_object() || !tree.contains("nodes") ||
        !tree.contains("edges")) {
      throw ModelError("tree needs \"nodes\" and \"edges\"");
    }
    std::vector<Scope> nodes;
    for (std::size_t i = 0; i < tree.at("nodes").size(); ++i) {
      nodes.push_back(Scope::from_vars(scope_ids(
          tree.at("nodes")[i], ids, "tree.nodes[" + std::to_string(i) + "]")));
    }
    std::vector<std::pair<int, int>> edges;
    for (const json& e : tree.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        throw ModelError("tree.edges entries must be [i, j] index pairs");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    model.tree.emplace(std::move(nodes), std::move(edges));
  }
  return model;
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string render_report(const ResultReport& report) {
  std::string out = "{\"algorithm\":\"";
  out += report.algorithm;
  out += "\",\"Z\":";
  append_number(out, report.Z);
  out += ",\"m\":";
  append_number(out, report.m);
  if (report.per_node_marginals) {
    out += ",\"per_node_marginals\":[";
    for (std::size_t i = 0; i < report.per_node_marginals->size(); ++i) {
      const NodeMarginalReport& nm = (*report.per_node_marginals)[i];
      if (i) out += ',';
      out += "{\"node\":";
      append_string_array(out, nm.node);
      out += ",\"values\":";
      append_number_array(out, nm.values);
      out += '}';
    }
    out += ']';
  }
  if (report.conditional) {
    out += ",\"conditional\":{\"scope\":";
    append_string_array(out, report.conditional->scope);
    out += ",\"expectation\":";
    append_number_array(out, report.conditional->expectation);
    out += '}';
  }
  if (report.stats) {
    out += ",\"stats\":{\"messages\":";
    out += std::to_string(report.stats->messages);
    out += ",\"peak_live\":";
    out += std::to_string(report.stats->peak_live);
    out += ",\"combine_ops\":";
    out += std::to_string(report.stats->combine_ops);
    out += '}';
  }
  out += "}\n";
  return out;
}

std::string render_validation_report(std::size_t nodes, std::size_t edges) {
  std::string out = "{\"validated\":true,\"nodes\":";
  out += std::to_string(nodes);
  out += ",\"edges\":";
  out += std::to_string(edges);
  out += ",\"stats\":{\"messages\":0,\"peak_live\":0,\"combine_ops\":0}}\n";
  return out;
}

}  // namespace jtmom
