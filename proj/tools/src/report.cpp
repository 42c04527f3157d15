#include "goaldea/app/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace goaldea::app {

using ordered_json = nlohmann::ordered_json;

const char* to_string(Format format) noexcept {
  switch (format) {
    case Format::Table: return "table";
    case Format::Csv: return "csv";
    case Format::Json: return "json";
  }
  return "unknown";
}

std::optional<Format> format_from_string(std::string_view text) {
  if (text == "table") return Format::Table;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  return std::nullopt;
}

std::string full_precision(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string alpha_label(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return std::string("alpha=") + buf;
}

bool is_efficient(dea::EfficiencyStatus status) {
  return status != dea::EfficiencyStatus::Inefficient;
}

std::string render_table(const Report& report) {
  const auto& schema = report.schema;
  const auto order = schema.report_order();
  std::ostringstream out;
  out << "model: " << to_string(report.kind) << "\n";
  bool any_unattainable = false;
  bool any_efficient = false;
  bool any_failure = false;

  for (const auto& dmu : report.dmus) {
    // Each inner vector is one printed row: label then one cell per column.
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{""};
    for (std::size_t k : order) head.push_back(schema[k].name);
    rows.push_back(head);
    std::vector<std::string> actual{"Actual"};
    for (std::size_t k : order) actual.push_back(fixed2(dmu.actual[k]));
    rows.push_back(actual);
    std::vector<std::string> failures;
    for (const auto& entry : dmu.rows) {
      std::vector<std::string> row{alpha_label(entry.alpha)};
      for (std::size_t k : order) {
        if (!entry.result || !schema[k].is_controllable()) {
          row.push_back("");
        } else {
          row.push_back(fixed2(entry.result->targets[k]));
        }
      }
      if (!entry.result) {
        row.back() = "failed";
        failures.push_back(alpha_label(entry.alpha) + ": " + entry.error);
        any_failure = true;
      }
      rows.push_back(row);
    }
    std::vector<std::string> goals{"Goals"};
    for (std::size_t k : order) {
      if (!dmu.goals[k]) {
        goals.push_back("");
      } else {
        goals.push_back(fixed2(*dmu.goals[k]) + (dmu.attainable ? "" : "*"));
      }
    }
    rows.push_back(goals);

    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    out << "\n" << dmu.dmu << (is_efficient(dmu.status) ? " \xE2\x80\xA0" : "") << "\n";
    out << "goals " << (dmu.attainable ? "attainable" : "unattainable") << "\n";
    for (const auto& row : rows) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::string& cell = row[c];
        if (c == 0) {
          line += cell + std::string(width[c] - cell.size(), ' ');
        } else {
          line += "  " + std::string(width[c] - cell.size(), ' ') + cell;
        }
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << "\n";
    }
    for (const auto& f : failures) out << "  " << f << "\n";
    any_unattainable |= !dmu.attainable;
    any_efficient |= is_efficient(dmu.status);
  }
  if (any_unattainable || any_efficient || any_failure) out << "\n";
  if (any_unattainable) out << "* goals unattainable for the actual level of the remaining variables\n";
  if (any_efficient) out << "\xE2\x80\xA0 efficient DMU\n";
  if (any_failure) out << "failed: no target computed for this alpha, see message\n";
  return out.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const Report& report) {
  const auto& schema = report.schema;
  std::ostringstream out;
  out << "dmu,alpha";
  for (const auto& e : schema.entries()) out << "," << csv_escape(e.name);
  out << ",d_actual,d_goal,objective,stage2_applied,nodes,reference_set";
  for (const auto& e : schema.entries()) out << "," << csv_escape("dev_actual:" + e.name);
  for (const auto& e : schema.entries()) out << "," << csv_escape("dev_goal:" + e.name);
  out << ",attainable,status,error\n";
  for (const auto& dmu : report.dmus) {
    for (const auto& entry : dmu.rows) {
      out << csv_escape(dmu.dmu) << "," << full_precision(entry.alpha);
      const std::size_t n = schema.size();
      if (entry.result) {
        const auto& r = *entry.result;
        for (double t : r.targets) out << "," << full_precision(t);
        out << "," << full_precision(r.d_actual) << "," << full_precision(r.d_goal) << ","
            << full_precision(r.objective) << "," << (r.stage2_applied ? "true" : "false") << ","
            << r.nodes << ",";
        std::string refs;
        for (const auto& w : r.reference_set) {
          if (!refs.empty()) refs += ";";
          refs += w.dmu + ":" + full_precision(w.lambda);
        }
        out << csv_escape(refs);
        for (double d : r.deviations.actual) out << "," << full_precision(d);
        for (const auto& d : r.deviations.goal) out << "," << (d ? full_precision(*d) : "");
      } else {
        out << std::string(n + 6 + 2 * n, ',');
      }
      out << "," << (dmu.attainable ? "true" : "false") << "," << dea::to_string(dmu.status) << ","
          << csv_escape(entry.error) << "\n";
    }
  }
  return out.str();
}

ordered_json optional_array(const std::vector<std::optional<double>>& values) {
  ordered_json a = ordered_json::array();
  for (const auto& v : values) a.push_back(v ? ordered_json(*v) : ordered_json(nullptr));
  return a;
}

ordered_json result_json(const models::BenchmarkResult& r) {
  ordered_json j;
  j["dmu"] = r.dmu;
  j["alpha"] = r.alpha;
  j["kind"] = to_string(r.kind);
  j["targets"] = r.targets;
  ordered_json refs = ordered_json::array();
  for (const auto& w : r.reference_set) refs.push_back({{"dmu", w.dmu}, {"lambda", w.lambda}});
  j["reference_set"] = refs;
  j["deviations"] = {{"actual", r.deviations.actual}, {"goal", optional_array(r.deviations.goal)}};
  j["d_actual"] = r.d_actual;
  j["d_goal"] = r.d_goal;
  j["objective"] = r.objective;
  j["stage2_applied"] = r.stage2_applied;
  j["nodes"] = r.nodes;
  return j;
}

std::string render_json(const Report& report) {
  ordered_json root;
  ordered_json vars = ordered_json::array();
  for (const auto& e : report.schema.entries()) {
    vars.push_back({{"name", e.name},
                    {"kind", e.is_input() ? "input" : "output"},
                    {"controllable", e.is_controllable()}});
  }
  root["schema"] = vars;
  root["kind"] = to_string(report.kind);
  root["alphas"] = report.alphas;
  ordered_json dmus = ordered_json::array();
  for (const auto& d : report.dmus) {
    ordered_json j;
    j["dmu"] = d.dmu;
    j["status"] = dea::to_string(d.status);
    j["attainable"] = d.attainable;
    j["actual"] = d.actual;
    j["goals"] = optional_array(d.goals);
    ordered_json rows = ordered_json::array();
    for (const auto& e : d.rows) {
      ordered_json row;
      row["alpha"] = e.alpha;
      row["result"] = e.result ? result_json(*e.result) : ordered_json(nullptr);
      row["error"] = e.error;
      rows.push_back(row);
    }
    j["rows"] = rows;
    dmus.push_back(j);
  }
  root["dmus"] = dmus;
  return root.dump(2) + "\n";
}

std::vector<std::optional<double>> read_optional_array(const ordered_json& a) {
  std::vector<std::optional<double>> out;
  for (const auto& v : a) {
    if (v.is_null()) {
      out.emplace_back();
    } else {
      out.emplace_back(v.get<double>());
    }
  }
  return out;
}

ModelKind read_kind(const ordered_json& j) {
  const auto kind = model_kind_from_string(j.get<std::string>());
  if (!kind) throw InputError("unknown model kind '" + j.get<std::string>() + "'");
  return *kind;
}

dea::EfficiencyStatus read_status(const std::string& s) {
  for (auto status : {dea::EfficiencyStatus::ExtremeEfficient, dea::EfficiencyStatus::Efficient,
                      dea::EfficiencyStatus::Inefficient}) {
    if (s == dea::to_string(status)) return status;
  }
  throw InputError("unknown efficiency status '" + s + "'");
}

models::BenchmarkResult read_result(const ordered_json& j) {
  models::BenchmarkResult r;
  r.dmu = j.at("dmu").get<std::string>();
  r.alpha = j.at("alpha").get<double>();
  r.kind = read_kind(j.at("kind"));
  r.targets = j.at("targets").get<std::vector<double>>();
  for (const auto& w : j.at("reference_set")) {
    r.reference_set.push_back({w.at("dmu").get<std::string>(), w.at("lambda").get<double>()});
  }
  r.deviations.actual = j.at("deviations").at("actual").get<std::vector<double>>();
  r.deviations.goal = read_optional_array(j.at("deviations").at("goal"));
  r.d_actual = j.at("d_actual").get<double>();
  r.d_goal = j.at("d_goal").get<double>();
  r.objective = j.at("objective").get<double>();
  r.stage2_applied = j.at("stage2_applied").get<bool>();
  r.nodes = j.at("nodes").get<std::size_t>();
  return r;
}

}  // namespace

std::string render_report(const Report& report, Format format) {
  switch (format) {
    case Format::Table: return render_table(report);
    case Format::Csv: return render_csv(report);
    case Format::Json: return render_json(report);
  }
  return {};
}

Report report_from_json(std::string_view text) {
  try {
    const auto root = ordered_json::parse(text);
    Report report;
    std::vector<VariableSpec> specs;
    for (const auto& v : root.at("schema")) {
      VariableSpec spec;
      spec.name = v.at("name").get<std::string>();
      spec.kind = v.at("kind").get<std::string>() == "input" ? VariableKind::Input
                                                             : VariableKind::Output;
      spec.control = v.at("controllable").get<bool>() ? Control::Controllable
                                                      : Control::NonControllable;
      specs.push_back(std::move(spec));
    }
    report.schema = VariableSchema(std::move(specs));
    report.kind = read_kind(root.at("kind"));
    report.alphas = root.at("alphas").get<std::vector<double>>();
    for (const auto& j : root.at("dmus")) {
      DmuReport d;
      d.dmu = j.at("dmu").get<std::string>();
      d.status = read_status(j.at("status").get<std::string>());
      d.attainable = j.at("attainable").get<bool>();
      d.actual = j.at("actual").get<std::vector<double>>();
      d.goals = read_optional_array(j.at("goals"));
      for (const auto& row : j.at("rows")) {
        models::SweepEntry e;
        e.alpha = row.at("alpha").get<double>();
        if (!row.at("result").is_null()) e.result = read_result(row.at("result"));
        e.error = row.at("error").get<std::string>();
        d.rows.push_back(std::move(e));
      }
      report.dmus.push_back(std::move(d));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report json: ") + e.what());
  }
}

}  // namespace goaldea::app
