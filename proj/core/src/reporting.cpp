#include "mergeprobe/reporting.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mergeprobe {
namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += "\"";
  return quoted;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write report file: " + path.string());
  }
  out << text;
}

std::string simple_class_name(const std::string& fqcn) {
  std::size_t cut = fqcn.find_last_of('.');
  return cut == std::string::npos ? fqcn : fqcn.substr(cut + 1);
}

// Temperatures render with one decimal (0.0, 0.7); seeds verbatim.
std::string temperature_text(double t) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << t;
  return out.str();
}

}  // namespace

RunMetrics compute_run_metrics(const RunTallies& tallies, std::int64_t conflicts_detected,
                               std::int64_t wall_time_ms) {
  RunMetrics m;
  m.tallies = tallies;
  m.conflicts_detected = conflicts_detected;
  m.wall_time_ms = wall_time_ms;
  if (tallies.methods > 0) {
    m.per_method_generated =
        static_cast<double>(tallies.tests_generated) / static_cast<double>(tallies.methods);
    m.per_method_compiled =
        static_cast<double>(tallies.tests_compiled) / static_cast<double>(tallies.methods);
  }
  if (tallies.tests_generated > 0) {
    m.compilation_rate = static_cast<double>(tallies.tests_compiled) /
                         static_cast<double>(tallies.tests_generated);
  }
  return m;
}

std::string format_ratio_2dp(std::int64_t num, std::int64_t den) {
  if (den <= 0) return "0.00";
  // Half-up at the second decimal: floor((200*num + den) / (2*den)).
  std::int64_t hundredths = (200 * num + den) / (2 * den);
  std::ostringstream out;
  out << hundredths / 100 << "." << (hundredths % 100 < 10 ? "0" : "")
      << hundredths % 100;
  return out.str();
}

std::string format_percent_2dp(std::int64_t num, std::int64_t den) {
  if (den <= 0) return "0.00%";
  std::int64_t hundredths = (20000 * num + den) / (2 * den);
  std::ostringstream out;
  out << hundredths / 100 << "." << (hundredths % 100 < 10 ? "0" : "")
      << hundredths % 100 << "%";
  return out.str();
}

std::string config_label_string(const RunConfigLabel& label) {
  std::ostringstream out;
  out << format_key(label.format) << "_t" << temperature_text(label.temperature) << "_s"
      << label.seed;
  return out.str();
}

std::string conflict_identifier(const MergeScenario& scenario) {
  return scenario.project_name + "::" + simple_class_name(scenario.target_class) +
         "::" + scenario.target_method;
}

bool matrix_union_flag(const DetectionMatrix& m, const std::string& conflict_id) {
  auto it = m.cells.find(conflict_id);
  if (it == m.cells.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [](bool b) { return b; });
}

std::int64_t matrix_union_count(const DetectionMatrix& m) {
  std::int64_t n = 0;
  for (const auto& id : m.conflict_ids) {
    if (matrix_union_flag(m, id)) ++n;
  }
  return n;
}

DetectionMatrix build_detection_matrix(
    const std::vector<std::pair<std::string, std::vector<ScenarioVerdict>>>& runs,
    const std::map<std::string, std::string>& conflict_id_by_scenario) {
  DetectionMatrix m;
  std::set<std::string> ids;
  for (const auto& [label, verdicts] : runs) {
    m.config_labels.push_back(label);
    for (const auto& v : verdicts) {
      if (!v.conflict_detected) continue;
      auto it = conflict_id_by_scenario.find(v.scenario_id);
      ids.insert(it != conflict_id_by_scenario.end() ? it->second : v.scenario_id);
    }
  }
  m.conflict_ids.assign(ids.begin(), ids.end());
  for (const auto& id : m.conflict_ids) {
    m.cells[id] = std::vector<bool>(m.config_labels.size(), false);
  }
  for (std::size_t col = 0; col < runs.size(); ++col) {
    for (const auto& v : runs[col].second) {
      if (!v.conflict_detected) continue;
      auto it = conflict_id_by_scenario.find(v.scenario_id);
      const std::string& id =
          it != conflict_id_by_scenario.end() ? it->second : v.scenario_id;
      m.cells[id][col] = true;
    }
  }
  return m;
}

std::vector<std::filesystem::path> emit_reports(
    const RunMetrics& metrics, const DetectionMatrix& matrix,
    const std::vector<ScenarioVerdict>& verdicts,
    const std::map<std::string, std::string>& conflict_id_by_scenario,
    const RunManifestInfo& manifest, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  {
    const RunTallies& t = metrics.tallies;
    std::ostringstream csv;
    csv << "methods,generation_calls,responses_total,generation_errors,no_code,"
           "parse_failure,tests_generated,compile_failed,tests_compiled,invalid,"
           "discarded_scenarios,per_method_generated,per_method_compiled,"
           "compilation_rate,conflicts_detected\n";
    csv << t.methods << ',' << t.generation_calls << ',' << t.responses_total << ','
        << t.generation_errors << ',' << t.no_code << ',' << t.parse_failure << ','
        << t.tests_generated << ',' << t.compile_failed << ',' << t.tests_compiled << ','
        << t.invalid << ',' << t.discarded_scenarios << ','
        << format_ratio_2dp(t.tests_generated, t.methods) << ','
        << format_ratio_2dp(t.tests_compiled, t.methods) << ','
        << format_percent_2dp(t.tests_compiled, t.tests_generated) << ','
        << metrics.conflicts_detected << "\n";
    auto path = out_dir / "run_metrics.csv";
    write_file(path, csv.str());
    written.push_back(path);
  }

  {
    std::ostringstream csv;
    csv << "conflict";
    for (const auto& label : matrix.config_labels) csv << ',' << csv_field(label);
    csv << ",union\n";
    for (const auto& id : matrix.conflict_ids) {
      csv << csv_field(id);
      for (bool flag : matrix.cells.at(id)) csv << ',' << (flag ? '1' : '0');
      csv << ',' << (matrix_union_flag(matrix, id) ? '1' : '0') << "\n";
    }
    auto path = out_dir / "detection_matrix.csv";
    write_file(path, csv.str());
    written.push_back(path);
  }

  {
    std::ostringstream csv;
    csv << "scenario_id,conflict,artifact,variant_id,signal,base,left,right,merge\n";
    std::vector<const ScenarioVerdict*> ordered;
    for (const auto& v : verdicts) ordered.push_back(&v);
    std::sort(ordered.begin(), ordered.end(),
              [](const ScenarioVerdict* a, const ScenarioVerdict* b) {
                return a->scenario_id < b->scenario_id;
              });
    for (const auto* v : ordered) {
      auto id_it = conflict_id_by_scenario.find(v->scenario_id);
      const std::string& id =
          id_it != conflict_id_by_scenario.end() ? id_it->second : v->scenario_id;
      for (const auto& w : v->witnesses) {
        csv << csv_field(v->scenario_id) << ',' << csv_field(id) << ','
            << csv_field(w.artifact_file) << ',' << w.variant_id << ','
            << signal_name(w.signal);
        for (VersionId version : kAllVersions) {
          auto o = w.outcomes.find(version);
          csv << ',' << (o == w.outcomes.end() ? '-' : outcome_letter(o->second));
        }
        csv << "\n";
      }
    }
    auto path = out_dir / "witnesses.csv";
    write_file(path, csv.str());
    written.push_back(path);
  }

  {
    nlohmann::ordered_json doc;
    doc["tool"] = manifest.tool;
    doc["started_at"] = manifest.started_at;
    doc["finished_at"] = manifest.finished_at;
    doc["wall_time_ms"] = manifest.wall_time_ms;
    if (!manifest.config_json.empty()) {
      doc["config"] = nlohmann::ordered_json::parse(manifest.config_json);
    } else {
      doc["config"] = nlohmann::ordered_json::object();
    }
    doc["metrics"]["conflicts_detected"] = metrics.conflicts_detected;
    doc["metrics"]["generation_calls"] = metrics.tallies.generation_calls;
    doc["metrics"]["tests_generated"] = metrics.tallies.tests_generated;
    doc["metrics"]["tests_compiled"] = metrics.tallies.tests_compiled;
    auto path = out_dir / "manifest.json";
    write_file(path, doc.dump(2) + "\n");
    written.push_back(path);
  }

  return written;
}

}  // namespace mergeprobe
