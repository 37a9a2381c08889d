#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "equisym/adaptive.hpp"
#include "equisym/symmetry.hpp"
#include "equisym/theorem_bench.hpp"

namespace equisym {

/// Per-file fit entry of the weights file.
struct FitRecord {
  std::string file;
  FitResult result;
};

/// Ordered key/value echo of the run configuration; reproducing the run
/// byte-identically only needs these entries plus the inputs.
struct RunConfigEcho {
  std::vector<std::pair<std::string, std::string>> entries;
  void set(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
};

struct ReportEnvelope {
  std::string tool_version;
  std::string created_at;  ///< UTC, excluded from determinism comparisons
  RunConfigEcho config;
  std::variant<SymmetryReport, std::vector<FitRecord>, std::vector<bench::BenchResult>> payload;
};

std::string utc_timestamp_now();

/// Deterministic JSON of the payload section alone (stable key order, no
/// timestamps). Two runs with identical config and inputs produce
/// byte-identical output.
std::string payload_json(const ReportEnvelope& envelope);

/// Full report document (version, timestamp, config echo, payload).
std::string envelope_json(const ReportEnvelope& envelope);

/// RFC-4180 CSV for bench results: header row plus one row per measured
/// entry with its comparison rule and pass flags.
std::string bench_csv(std::span<const bench::BenchResult> results);

void write_text_file(const std::string& path, const std::string& content);

/// Parses a weights file produced by the adapt command.
std::vector<FitRecord> read_weights_json(const std::string& path);

}  // namespace equisym
