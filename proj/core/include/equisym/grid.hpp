#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace equisym {

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }
double norm(Vec2 a);

/// Cell-centered square grid: cell (i, j), 1-based, sits at
/// ((i - (m+1)/2) * s * h, (j - (m+1)/2) * s * h).
///
/// The grid is centered, so cell (i, j) and cell (m+1-i, m+1-j) have exactly
/// opposite coordinates. Row index i maps to the first coordinate, column
/// index j to the second.
class GridSpec {
 public:
  /// Throws std::domain_error unless mesh_size > 0, side >= 1, downsample >= 1.
  GridSpec(double mesh_size, int side, int downsample = 1);

  double mesh() const { return mesh_size_; }
  int side() const { return side_; }
  int downsample() const { return downsample_; }

  /// Spacing between adjacent cell centers (s * h).
  double step() const { return static_cast<double>(downsample_) * mesh_size_; }

  /// Coordinate of cell (i, j), 1-based. Throws std::out_of_range when an
  /// index falls outside [1, side].
  Vec2 coord(int i, int j) const;

  /// Half-width of the coordinate hull, ((m-1)/2) * s * h. This is also the
  /// radius of the disk inscribed in the hull.
  double half_extent() const;
  double inscribed_radius() const { return half_extent(); }

  bool operator==(const GridSpec&) const = default;

 private:
  double mesh_size_;
  int side_;
  int downsample_;
};

/// Square single-channel raster bound to a GridSpec. Values are stored
/// row-major as doubles; pixel access is 0-based while GridSpec::coord keeps
/// the 1-based convention of the grid formula.
class Image {
 public:
  /// Takes ownership of `values` (size must be side*side, all finite).
  Image(GridSpec grid, std::vector<double> values);

  static Image zeros(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int side() const { return grid_.side(); }

  double operator()(int r, int c) const { return values_[static_cast<std::size_t>(r) * side_ + c]; }
  double& operator()(int r, int c) { return values_[static_cast<std::size_t>(r) * side_ + c]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Coordinate of pixel (r, c) with 0-based indices.
  Vec2 coord0(int r, int c) const { return grid_.coord(r + 1, c + 1); }

 private:
  GridSpec grid_;
  std::size_t side_;
  std::vector<double> values_;
};

/// Compact-support radius used by the discretization-error hypotheses.
struct SupportSpec {
  double radius;
  explicit SupportSpec(double r);
};

/// h^2 * sum of all samples, accumulated row-major with compensated
/// (Neumaier) summation so the result is independent of parallel scheduling.
double riemann_integral(const Image& f);

/// Squared L2 norm of the raster, h^2-weighted like riemann_integral.
double l2_norm_sq(const Image& f);

/// Compensated sum of an arbitrary range (exposed for reuse in tests and
/// benches that must match the library's accumulation exactly).
double neumaier_sum(std::span<const double> xs);

}  // namespace equisym
