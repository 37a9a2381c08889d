#pragma once

#include "equisym/grid.hpp"

namespace equisym {

/// C^2 radial roll-off: 1 for r <= r0, 0 for r >= r1, quintic smoothstep in
/// between. r0 < r1 required.
double quintic_rolloff(double r, double r0, double r1);

/// Analytic test field. All shapes except `constant` are multiplied by a
/// quintic_rolloff mask that starts at 0.75 * support and reaches exact zero
/// at `support`, so samples vanish outside that disk and the field stays C^2
/// with bounded second derivatives.
///
/// The same object doubles as the continuous function for refined-grid
/// oracles: operator() evaluates it anywhere.
class FunctionSpec {
 public:
  enum class Kind { constant, gaussian, bump, radial_cosine };

  static FunctionSpec constant(double value);
  /// Gaussian with axis scales (sigma_x, sigma_y), principal axis rotated by
  /// `rotation` radians, masked to `support`. Throws std::domain_error when a
  /// sigma or the support is not positive.
  static FunctionSpec gaussian(double sigma_x, double sigma_y, double rotation, double support);
  /// Classical smooth bump exp(1 - 1/(1 - (r/radius)^2)); value 1 at the
  /// origin, identically zero outside `radius`.
  static FunctionSpec bump(double radius);
  /// cos(2*pi*freq*r) under the support mask.
  static FunctionSpec radial_cosine(double freq, double support);

  Kind kind() const { return kind_; }
  double support() const { return support_; }

  double operator()(double x1, double x2) const;
  double operator()(Vec2 p) const { return (*this)(p.x1, p.x2); }

 private:
  FunctionSpec() = default;
  Kind kind_ = Kind::constant;
  double value_ = 0.0;
  double sigma_x_ = 1.0, sigma_y_ = 1.0, rotation_ = 0.0;
  double freq_ = 0.0;
  double support_ = 0.0;  // 0 means unbounded (constant only)
};

/// Samples the field at the grid's cell centers.
Image sample_function(const FunctionSpec& spec, const GridSpec& grid);

}  // namespace equisym
