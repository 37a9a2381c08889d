#pragma once

#include "equisym/grid.hpp"
#include "equisym/transform.hpp"
#include "equisym/warp.hpp"

namespace equisym {

/// Lifted feature map: `order` spatial planes indexed by group element.
class FeatureMap {
 public:
  FeatureMap(GridSpec grid, int order);

  const GridSpec& grid() const { return grid_; }
  int order() const { return order_; }
  int side() const { return grid_.side(); }

  std::span<double> slice(int t);
  std::span<const double> slice(int t) const;

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double frobenius_norm() const;

 private:
  GridSpec grid_;
  int order_;
  std::vector<double> values_;  // order * side * side, slice-major
};

/// Group action on lifted features: warps every slice by
/// group_element(family, a_index) and cyclically shifts the group axis, so
/// output slice t is the warped input slice (t - a_index) mod order.
///
/// a_index == 0 returns a bitwise copy. Throws std::domain_error when the
/// feature order does not match the family or a_index is out of range.
FeatureMap lifted_act(const FeatureMap& features, int a_index, const GroupFamily& family,
                      Interp method = Interp::bilinear);

}  // namespace equisym
