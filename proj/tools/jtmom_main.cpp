// Batch front-end: load a model file, validate it, run one moment strategy
// and print a JSON report on stdout.
//
// Exit codes: 0 success, 1 usage, 2 model or validation error, 3 enumeration
// cap exceeded.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jtmom/errors.hpp"
#include "jtmom/model_io.hpp"
#include "jtmom/moments.hpp"

namespace {

using namespace jtmom;

constexpr double kNormalizationTolerance = 1e-6;

std::vector<std::string> names_of(const Model& model, const Scope& scope) {
  std::vector<std::string> out;
  out.reserve(scope.size());
  for (VariableId v : scope.vars()) out.push_back(model.name_of(v));
  return out;
}

Scope parse_query(const Model& model, const std::string& query) {
  std::vector<VariableId> vars;
  std::stringstream ss(query);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    VariableId id = 0;
    bool found = false;
    for (; id < model.frames.size(); ++id) {
      if (model.variable_names[id] == name) {
        found = true;
        break;
      }
    }
    if (!found) throw ModelError("query names unknown variable '" + name + "'");
    vars.push_back(id);
  }
  return Scope::from_vars(std::move(vars));
}

void warn_if_unnormalized(double z) {
  if (std::abs(z - 1.0) > kNormalizationTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", z);
    std::cerr << "warning: p-factors are not normalized (total mass "
              << buf << ")\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"First-order moments of factorized models on junction trees"};
  app.get_formatter()->column_width(30);

  std::string model_path;
  std::string algorithm;
  std::string query;
  int root = 0;
  bool with_stats = false;
  bool validate_only = false;

  app.add_option("--model", model_path, "Path to the JSON model file")
      ->required();
  app.add_option("--algorithm", algorithm,
                 "Strategy: ln | maua | all-vertices | brute-force")
      ->check(CLI::IsMember({"ln", "maua", "all-vertices", "brute-force"}));
  app.add_option("--root", root, "Junction tree node used as the root");
  app.add_option("--query", query,
                 "Comma-separated variable names: report E[h | query] too");
  app.add_flag("--stats", with_stats, "Include instrumentation counters");
  app.add_flag("--validate-only", validate_only,
               "Parse and validate, compute nothing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }
  if (!validate_only && algorithm.empty()) {
    std::cerr << "--algorithm is required unless --validate-only is given\n\n"
              << app.help();
    return 1;
  }

  try {
    const Model model = load_model(model_path);
    const PreparedModel prep = prepare(model);

    if (validate_only) {
      // Desk-scale models get their total mass checked by enumeration; the
      // computing paths report Z instead. No messages are passed here.
      if (model.joint_cells() <= kDefaultEnumerationCap &&
          !model.p_factors.empty()) {
        warn_if_unnormalized(brute_force_mass(model));
      }
      std::cout << render_validation_report(prep.tree.node_count(),
                                            prep.tree.edge_count());
      return 0;
    }

    if (root < 0 || root >= static_cast<int>(prep.tree.node_count())) {
      std::cerr << "error: --root " << root << " is out of range (tree has "
                << prep.tree.node_count() << " nodes)\n";
      return 2;
    }

    ResultReport report;
    report.algorithm = algorithm;
    EngineStats stats;

    if (algorithm == "brute-force") {
      const double z = brute_force_mass(model);
      const double raw = brute_force_moment(model);
      report.Z = z;
      report.m = z == 0.0 ? 0.0 : raw / z;
    } else if (algorithm == "ln") {
      const MomentResult r = moment_ln(prep, root);
      report.Z = r.Z;
      report.m = r.m;
      stats = r.stats;
    } else if (algorithm == "maua") {
      const MomentResult r = moment_maua(prep, root);
      report.Z = r.Z;
      report.m = r.m;
      stats = r.stats;
    } else {  // all-vertices
      std::vector<Table> marginals;
      const MomentResult r = moment_all_vertices(prep, &marginals);
      report.Z = r.Z;
      report.m = r.m;
      stats = r.stats;
      std::vector<NodeMarginalReport> nm;
      for (std::size_t i = 0; i < marginals.size(); ++i) {
        nm.push_back({names_of(model, prep.tree.node(static_cast<int>(i))),
                      {marginals[i].values().begin(),
                       marginals[i].values().end()}});
      }
      report.per_node_marginals = std::move(nm);
    }
    warn_if_unnormalized(report.Z);

    if (app.count("--query")) {
      const Scope target = parse_query(model, query);
      Table expectation =
          algorithm == "brute-force"
              ? [&] {
                  // Enumeration route: m_C / p marginal, 0/0 := 0.
                  const Table mc = brute_force_moment_potential(model, target);
                  const Table pc = brute_force_marginal(model, target);
                  std::vector<double> cells(mc.size());
                  for (std::size_t i = 0; i < cells.size(); ++i) {
                    cells[i] = pc[i] == 0.0 ? 0.0 : mc[i] / pc[i];
                  }
                  return Table(mc.scope(), mc.dims(), std::move(cells));
                }()
              : conditional_expectation(prep, target);
      report.conditional = ConditionalReport{
          names_of(model, target),
          {expectation.values().begin(), expectation.values().end()}};
    }

    if (with_stats) {
      report.stats = StatsReport{stats.messages_computed, stats.peak_live,
                                 stats.combine_ops};
    }
    std::cout << render_report(report);
    return 0;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
