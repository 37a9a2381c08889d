#pragma once

#include <string>
#include <vector>

#include "equisym/grid.hpp"
#include "equisym/regularizer.hpp"
#include "equisym/transform.hpp"

namespace equisym {

enum class Scenario { sample_strict, dataset_strict, dataset_adaptive };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);  ///< accepts sample|dataset|adaptive

/// Per-angle deviations of the corpus-mean feature response and their
/// maximum.
///
/// For the dataset scenarios, per_angle_deviation[t] is
/// |mean_n R(r_n, id) - mean_n R(r_n, element_n(t))| and epsilon is its
/// maximum over t. For the sample scenario, per_angle_deviation[t] is the
/// corpus mean of the per-image absolute deviations and epsilon is the
/// corpus mean of the per-image maxima (the mean single-image epsilon).
struct SymmetryReport {
  Scenario scenario = Scenario::dataset_strict;
  RegName regularizer = RegName::tv;
  int angles = 0;
  double base_mean = 0.0;
  std::vector<double> per_angle_deviation;
  double epsilon = 0.0;
};

/// Dataset-level symmetry metric: deviations of the corpus-mean response
/// between identity and each group element, maximized over elements.
///
/// All families must share one order. Throws std::domain_error on an empty
/// dataset or mismatched orders.
SymmetryReport epsilon_metric(std::span<const Image> dataset, const RegularizerSpec& reg,
                              std::span<const GroupFamily> families, int jobs = 1);

/// Scenario dispatch: sample-strict (per-image strict rotations, mean of the
/// single-image epsilons), dataset-strict (one strict rotation family), and
/// dataset-adaptive (caller-supplied fitted families).
///
/// `adaptive_families` is only read for Scenario::dataset_adaptive and must
/// then hold one family per image.
SymmetryReport run_scenario(std::span<const Image> dataset, const RegularizerSpec& reg,
                            Scenario scenario, int angles,
                            std::span<const GroupFamily> adaptive_families = {}, int jobs = 1);

}  // namespace equisym
