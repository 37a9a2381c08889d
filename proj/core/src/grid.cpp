#include "equisym/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace equisym {

double norm(Vec2 a) { return std::hypot(a.x1, a.x2); }

GridSpec::GridSpec(double mesh_size, int side, int downsample)
    : mesh_size_(mesh_size), side_(side), downsample_(downsample) {
  if (!(mesh_size > 0.0) || !std::isfinite(mesh_size))
    throw std::domain_error("GridSpec: mesh_size must be positive and finite");
  if (side < 1) throw std::domain_error("GridSpec: side must be >= 1");
  if (downsample < 1) throw std::domain_error("GridSpec: downsample must be >= 1");
}

Vec2 GridSpec::coord(int i, int j) const {
  if (i < 1 || i > side_ || j < 1 || j > side_)
    throw std::out_of_range("GridSpec::coord: index (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside [1, " + std::to_string(side_) + "]");
  const double center = (side_ + 1) / 2.0;
  const double sh = step();
  return {(i - center) * sh, (j - center) * sh};
}

double GridSpec::half_extent() const { return (side_ - 1) / 2.0 * step(); }

Image::Image(GridSpec grid, std::vector<double> values)
    : grid_(grid), side_(static_cast<std::size_t>(grid.side())), values_(std::move(values)) {
  if (values_.size() != side_ * side_)
    throw std::domain_error("Image: value count does not match grid side");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::domain_error("Image: values must be finite");
}

Image Image::zeros(const GridSpec& grid) {
  return Image(grid, std::vector<double>(static_cast<std::size_t>(grid.side()) * grid.side(), 0.0));
}

SupportSpec::SupportSpec(double r) : radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("SupportSpec: radius must be positive");
}

double neumaier_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double riemann_integral(const Image& f) {
  const double h = f.grid().mesh();
  return h * h * neumaier_sum(f.values());
}

double l2_norm_sq(const Image& f) {
  const double h = f.grid().mesh();
  double sum = 0.0;
  double comp = 0.0;
  for (double v : f.values()) {
    const double x = v * v;
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return h * h * (sum + comp);
}

}  // namespace equisym
