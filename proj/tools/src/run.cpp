#include "goaldea/app/run.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "goaldea/app/ingest.hpp"
#include "goaldea/dea.hpp"
#include "goaldea/models.hpp"

namespace goaldea::app {

Report build_report(const ValidatedInstance& instance, const RunConfig& config) {
  const Dataset& dataset = instance.dataset();
  std::vector<std::string> selected = instance.benchmark_dmus();
  if (!config.dmus.empty()) {
    std::vector<Issue> issues;
    for (const auto& id : config.dmus) {
      if (!dataset.index_of(id)) {
        issues.push_back({IssueCode::UnknownDmu, "--dmu '" + id + "' is not in the data"});
      } else if (std::find(selected.begin(), selected.end(), id) == selected.end()) {
        issues.push_back({IssueCode::MissingGoalRow, "--dmu '" + id + "' has no goal row"});
      }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    std::erase_if(selected, [&](const std::string& id) {
      return std::find(config.dmus.begin(), config.dmus.end(), id) == config.dmus.end();
    });
  }

  std::vector<double> factors;
  Dataset working = dataset;
  GoalSet working_goals = instance.goals();
  if (config.rescale) {
    factors = models::conditioning_factors(dataset);
    working = models::rescale(dataset, factors);
    working_goals = models::rescale(instance.goals(), dataset.schema, factors);
  }
  const dea::Technology technology = dea::classify_extreme_efficient(working);

  models::SolveOptions options;
  options.node_limit = config.node_limit;

  Report report;
  report.schema = dataset.schema;
  report.kind = instance.kind();
  report.alphas = config.alphas.values();
  for (const auto& id : selected) {
    const std::size_t j = *dataset.index_of(id);
    DmuReport d;
    d.dmu = id;
    d.actual = dataset.values[j];
    d.goals = instance.goal_vector(id);
    d.attainable = dea::goal_attainability(dataset, id, instance.goals());
    d.status = technology.status(j);
    const GoalVector goals = goal_vector_for(working.schema, working_goals, id);
    d.rows = models::sweep_alpha_grid(instance.kind(), technology, id, goals, config.alphas, options);
    if (config.rescale) {
      for (auto& entry : d.rows) {
        if (entry.result) entry.result = models::restore_units(std::move(*entry.result), factors);
      }
    }
    report.dmus.push_back(std::move(d));
  }
  return report;
}

namespace {

void print_issues(const ValidationError& e, std::ostream& err) {
  for (const auto& issue : e.issues()) {
    err << "error: " << to_string(issue.code) << ": " << issue.message << "\n";
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    const ValidatedInstance instance = ingest(config.data, config.goals);
    for (const auto& w : instance.warnings()) err << "warning: " << w << "\n";
    report = build_report(instance, config);
  } catch (const ValidationError& e) {
    print_issues(e, err);
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverError;
  }

  int code = kExitOk;
  for (const auto& d : report.dmus) {
    for (const auto& entry : d.rows) {
      if (!entry.result) {
        err << "error: " << d.dmu << " alpha " << entry.alpha << ": " << entry.error << "\n";
        code = kExitSolverError;
      }
    }
  }

  const std::string text = render_report(report, config.format);
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << config.out->string() << "'\n";
      return kExitInputError;
    }
    file << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace goaldea::app
