#include "equisym/symmetry.hpp"

#include <cmath>
#include <stdexcept>

#include "equisym/parallel.hpp"

namespace equisym {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::sample_strict: return "sample-strict";
    case Scenario::dataset_strict: return "dataset-strict";
    case Scenario::dataset_adaptive: return "dataset-adaptive";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "sample" || name == "sample-strict") return Scenario::sample_strict;
  if (name == "dataset" || name == "dataset-strict") return Scenario::dataset_strict;
  if (name == "adaptive" || name == "dataset-adaptive") return Scenario::dataset_adaptive;
  throw std::domain_error("unknown scenario: " + name);
}

namespace {

// responses[n][t] for every image and group element, parallel over images.
std::vector<std::vector<double>> response_table(std::span<const Image> dataset,
                                                const RegularizerSpec& reg,
                                                std::span<const GroupFamily> families, int jobs) {
  const std::size_t n = dataset.size();
  const int T = families[0].order();
  std::vector<std::vector<double>> out(n);
  parallel::for_index(n, jobs, [&](std::size_t i) {
    ResponseEngine engine(dataset[i], reg);
    std::vector<double> row(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) row[static_cast<std::size_t>(t)] = engine.response(group_element(families[i], t));
    out[i] = std::move(row);
  });
  return out;
}

}  // namespace

SymmetryReport epsilon_metric(std::span<const Image> dataset, const RegularizerSpec& reg,
                              std::span<const GroupFamily> families, int jobs) {
  if (dataset.empty()) throw std::domain_error("epsilon_metric: empty dataset");
  if (families.size() != dataset.size())
    throw std::domain_error("epsilon_metric: one family per image required");
  const int T = families[0].order();
  for (const auto& f : families)
    if (f.order() != T) throw std::domain_error("epsilon_metric: families must share one order");

  const auto responses = response_table(dataset, reg, families, jobs);
  const double n = static_cast<double>(dataset.size());

  SymmetryReport report;
  report.scenario = Scenario::dataset_strict;
  report.regularizer = reg.name();
  report.angles = T;
  double base = 0.0;
  for (const auto& row : responses) base += row[0];
  base /= n;
  report.base_mean = base;
  report.per_angle_deviation.assign(static_cast<std::size_t>(T), 0.0);
  for (int t = 0; t < T; ++t) {
    double mean_t = 0.0;
    for (const auto& row : responses) mean_t += row[static_cast<std::size_t>(t)];
    mean_t /= n;
    report.per_angle_deviation[static_cast<std::size_t>(t)] = std::abs(base - mean_t);
  }
  report.epsilon = 0.0;
  for (double d : report.per_angle_deviation) report.epsilon = std::max(report.epsilon, d);
  return report;
}

SymmetryReport run_scenario(std::span<const Image> dataset, const RegularizerSpec& reg,
                            Scenario scenario, int angles,
                            std::span<const GroupFamily> adaptive_families, int jobs) {
  if (dataset.empty()) throw std::domain_error("run_scenario: empty dataset");
  if (angles < 2) throw std::domain_error("run_scenario: angles must be >= 2");

  if (scenario == Scenario::dataset_strict || scenario == Scenario::dataset_adaptive) {
    std::vector<GroupFamily> families;
    families.reserve(dataset.size());
    if (scenario == Scenario::dataset_strict) {
      for (std::size_t i = 0; i < dataset.size(); ++i) families.emplace_back(angles);
    } else {
      if (adaptive_families.size() != dataset.size())
        throw std::domain_error("run_scenario: dataset-adaptive needs one fitted family per image");
      families.assign(adaptive_families.begin(), adaptive_families.end());
      for (const auto& f : families)
        if (f.order() != angles)
          throw std::domain_error("run_scenario: adaptive family order does not match angles");
    }
    SymmetryReport report = epsilon_metric(dataset, reg, families, jobs);
    report.scenario = scenario;
    return report;
  }

  // sample-strict: per-image strict-rotation deviations, averaged over the corpus
  std::vector<GroupFamily> families(dataset.size(), GroupFamily(angles));
  const auto responses = response_table(dataset, reg, families, jobs);
  const double n = static_cast<double>(dataset.size());

  SymmetryReport report;
  report.scenario = Scenario::sample_strict;
  report.regularizer = reg.name();
  report.angles = angles;
  double base = 0.0;
  for (const auto& row : responses) base += row[0];
  report.base_mean = base / n;
  report.per_angle_deviation.assign(static_cast<std::size_t>(angles), 0.0);
  double eps = 0.0;
  for (const auto& row : responses) {
    double img_max = 0.0;
    for (int t = 0; t < angles; ++t) {
      const double d = std::abs(row[static_cast<std::size_t>(t)] - row[0]);
      report.per_angle_deviation[static_cast<std::size_t>(t)] += d / n;
      img_max = std::max(img_max, d);
    }
    eps += img_max;
  }
  report.epsilon = eps / n;
  return report;
}

}  // namespace equisym
