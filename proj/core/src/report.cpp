#include "equisym/report.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace equisym {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const SymmetryReport& r) {
  ordered_json j;
  j["type"] = "symmetry";
  j["scenario"] = to_string(r.scenario);
  j["regularizer"] = to_string(r.regularizer);
  j["angles"] = r.angles;
  j["base_mean"] = r.base_mean;
  j["per_angle_deviation"] = r.per_angle_deviation;
  j["epsilon"] = r.epsilon;
  return j;
}

ordered_json to_json(const FitRecord& r) {
  ordered_json j;
  j["file"] = r.file;
  j["w"] = {r.result.w.alpha, r.result.w.sx, r.result.w.sy};
  j["objective_initial"] = r.result.objective_initial;
  j["objective_final"] = r.result.objective_final;
  j["iterations"] = r.result.iterations;
  j["converged"] = r.result.converged;
  return j;
}

ordered_json to_json(const bench::BenchResult& r) {
  ordered_json j;
  j["name"] = r.name;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["entry_labels"] = r.entry_labels;
  j["measured"] = r.measured;
  j["bound_or_reference"] = r.bound_or_reference;
  j["pass"] = r.pass;
  return j;
}

ordered_json payload_to_json(const ReportEnvelope& envelope) {
  if (const auto* sym = std::get_if<SymmetryReport>(&envelope.payload)) return to_json(*sym);
  if (const auto* fits = std::get_if<std::vector<FitRecord>>(&envelope.payload)) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : *fits) arr.push_back(to_json(f));
    ordered_json j;
    j["type"] = "weights";
    j["fits"] = arr;
    return j;
  }
  const auto& benches = std::get<std::vector<bench::BenchResult>>(envelope.payload);
  ordered_json arr = ordered_json::array();
  for (const auto& b : benches) arr.push_back(to_json(b));
  ordered_json j;
  j["type"] = "bench";
  j["results"] = arr;
  return j;
}

std::string csv_quote(const std::string& s) {
  bool needs = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> comparison_rules(const bench::BenchResult& r) {
  std::string rules;
  for (const auto& [k, v] : r.parameters)
    if (k == "comparison") rules = v;
  std::vector<std::string> out;
  std::string cur;
  for (char c : rules) {
    if (c == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string utc_timestamp_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string payload_json(const ReportEnvelope& envelope) {
  return payload_to_json(envelope).dump(2);
}

std::string envelope_json(const ReportEnvelope& envelope) {
  ordered_json j;
  j["tool_version"] = envelope.tool_version;
  j["created_at"] = envelope.created_at;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : envelope.config.entries) cfg[k] = v;
  j["config_echo"] = cfg;
  j["payload"] = payload_to_json(envelope);
  return j.dump(2) + "\n";
}

std::string bench_csv(std::span<const bench::BenchResult> results) {
  std::string out = "suite,entry,label,measured,bound_or_reference,comparison,entry_pass,suite_pass\r\n";
  for (const auto& r : results) {
    const auto rules = comparison_rules(r);
    for (std::size_t i = 0; i < r.measured.size(); ++i) {
      const std::string rule = i < rules.size() ? rules[i] : "";
      const double m = r.measured[i];
      const double b = r.bound_or_reference[i];
      bool entry_pass = false;
      if (rule == "le") entry_pass = m <= b;
      else if (rule == "lt") entry_pass = m < b;
      else if (rule == "ge") entry_pass = m >= b;
      else if (rule == "gt") entry_pass = m > b;
      out += csv_quote(r.name) + "," + std::to_string(i) + "," + csv_quote(r.entry_labels[i]) + "," +
             num(m) + "," + num(b) + "," + csv_quote(rule) + "," + (entry_pass ? "true" : "false") +
             "," + (r.pass ? "true" : "false") + "\r\n";
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<FitRecord> read_weights_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weights file: " + path);
  ordered_json j;
  in >> j;
  const ordered_json& arr = j.contains("payload") ? j["payload"]["fits"]
                           : j.contains("fits")   ? j["fits"]
                                                  : j;
  if (!arr.is_array()) throw std::runtime_error("weights file: expected an array of fits: " + path);
  std::vector<FitRecord> out;
  for (const auto& e : arr) {
    FitRecord rec;
    rec.file = e.value("file", "");
    const auto& w = e.at("w");
    rec.result.w = AffineParams(w.at(0).get<double>(), w.at(1).get<double>(), w.at(2).get<double>());
    rec.result.objective_initial = e.value("objective_initial", 0.0);
    rec.result.objective_final = e.value("objective_final", 0.0);
    rec.result.iterations = e.value("iterations", 0);
    rec.result.converged = e.value("converged", false);
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace equisym
