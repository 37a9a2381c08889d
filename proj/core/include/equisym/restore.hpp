#pragma once

#include <vector>

#include "equisym/grid.hpp"

namespace equisym {

enum class TVMode { isotropic, x_only };

/// Toy variational restoration: gradient descent on
///   h^2 * || Yhat - K*Y ||_F^2 + lambda * h^2 * sum HuberTV(grad Y)
/// from Y0 = Yhat with a fixed blur kernel K.
struct RestorationConfig {
  enum class Kernel { delta, gaussian };
  Kernel kernel = Kernel::delta;
  double kernel_sigma = 0.0;  ///< physical units, gaussian only
  double lambda = 0.0;
  double huber_delta = 1e-3;
  int iters = 500;
  double step_scale = 0.5;  ///< step = step_scale / L, L from power iteration
  TVMode tv = TVMode::isotropic;

  void validate() const;
};

struct RestoreResult {
  Image image;
  std::vector<double> trace;  ///< objective after each accepted step, non-increasing
  int effective_updates = 0;
};

/// Runs the solver. The objective trace is non-increasing: steps are halved
/// (up to 20 times) on objective increase and the solver halts when no
/// descent step exists. Non-finite objectives or gradients raise
/// std::runtime_error with the trace in the message.
RestoreResult restore(const Image& degraded, const RestorationConfig& config);

/// The blur kernel the solver uses, sampled on the image mesh and normalized
/// to unit sum (delta yields the single tap 1). Exposed for benches.
std::vector<double> restoration_kernel(const RestorationConfig& config, double mesh, int* p_out);

}  // namespace equisym
