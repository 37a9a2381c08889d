#pragma once

#include <vector>

#include "equisym/grid.hpp"
#include "equisym/regularizer.hpp"
#include "equisym/transform.hpp"

namespace equisym {

/// Settings for the per-sample transform fit.
struct FitConfig {
  int angles = 32;
  int max_iters = 200;
  double step = 0.05;
  double grad_eps = 1e-3;
  double tol = 1e-8;            ///< relative objective decrease
  double scale_min = 0.5;
  double scale_max = 2.0;
  bool multi_start = false;     ///< adds starts at alpha in {pi/8, pi/4, 3pi/8}

  void validate() const;  ///< throws std::domain_error on bad settings
};

struct FitResult {
  AffineParams w;
  double objective_initial = 0.0;
  double objective_final = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  ///< accepted objective values, non-increasing
};

/// Population variance (divide by T) of the feature responses over the
/// conjugated rotation group built from w.
double variance_objective(const Image& image, const AffineParams& w, const RegularizerSpec& reg,
                          int angles);

/// Projected gradient descent on (alpha, log s_x, log s_y) with
/// central-difference gradients, scale clamping, and per-iteration step
/// halving (at most 20 halvings). Deterministic; objective_final never
/// exceeds objective_initial. Throws std::domain_error if the objective is
/// not finite.
FitResult fit_w(const Image& image, const RegularizerSpec& reg, const FitConfig& config);

/// Independent fit_w per image, results ordered by input index. Errors are
/// rethrown with the image index attached.
std::vector<FitResult> fit_corpus(std::span<const Image> dataset, const RegularizerSpec& reg,
                                  const FitConfig& config, int jobs = 1);

/// Group families induced by fitted parameters (order = config.angles).
std::vector<GroupFamily> families_from_fits(std::span<const FitResult> fits, int angles);

}  // namespace equisym
