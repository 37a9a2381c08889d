#include "equisym/feature_map.hpp"

#include <cmath>
#include <stdexcept>

namespace equisym {

FeatureMap::FeatureMap(GridSpec grid, int order)
    : grid_(grid), order_(order),
      values_(static_cast<std::size_t>(order) * grid.side() * grid.side(), 0.0) {
  if (order < 1) throw std::domain_error("FeatureMap: order must be >= 1");
}

std::span<double> FeatureMap::slice(int t) {
  const std::size_t plane = static_cast<std::size_t>(side()) * side();
  return std::span<double>(values_).subspan(static_cast<std::size_t>(t) * plane, plane);
}

std::span<const double> FeatureMap::slice(int t) const {
  const std::size_t plane = static_cast<std::size_t>(side()) * side();
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(t) * plane, plane);
}

double FeatureMap::frobenius_norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

FeatureMap lifted_act(const FeatureMap& features, int a_index, const GroupFamily& family,
                      Interp method) {
  if (features.order() != family.order())
    throw std::domain_error("lifted_act: feature order does not match family order");
  if (a_index < 0 || a_index >= family.order())
    throw std::domain_error("lifted_act: a_index outside [0, order)");
  FeatureMap out(features.grid(), features.order());
  if (a_index == 0) {
    std::copy(features.values().begin(), features.values().end(), out.values().begin());
    return out;
  }
  const Transform A = group_element(family, a_index);
  const int T = family.order();
  for (int t = 0; t < T; ++t) {
    const int src = ((t - a_index) % T + T) % T;
    warp_plane(features.slice(src), out.slice(t), features.grid(), A, method);
  }
  return out;
}

}  // namespace equisym
