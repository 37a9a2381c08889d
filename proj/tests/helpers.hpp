#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "equisym/analytic.hpp"
#include "equisym/grid.hpp"

namespace equisym::testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double rel_l2_diff(std::span<const double> a, std::span<const double> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    num += d * d;
    den += b[i] * b[i];
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

/// Independent nested-loop zero-padded cross-correlation oracle.
inline std::vector<double> xcorr_oracle(std::span<const double> in, int m,
                                        std::span<const double> filter, int p, double scale) {
  std::vector<double> out(static_cast<std::size_t>(m) * m, 0.0);
  const int c = (p - 1) / 2;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) {
          const int ii = i + a - c;
          const int jj = j + b - c;
          if (ii < 0 || ii >= m || jj < 0 || jj >= m) continue;
          acc += in[static_cast<std::size_t>(ii) * m + jj] *
                 filter[static_cast<std::size_t>(a) * p + b];
        }
      out[static_cast<std::size_t>(i) * m + j] = scale * acc;
    }
  return out;
}

/// Band-limited random image with interior support (seeded, deterministic).
inline Image random_smooth_image(int m, unsigned seed, double content_radius_frac = 0.7,
                                 double min_sigma = 0.04) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const GridSpec grid(1.0 / m, m);
  Image img = Image::zeros(grid);
  const double extent = grid.half_extent();
  for (int comp = 0; comp < 5; ++comp) {
    const double sx = min_sigma + 0.08 * uni(rng);
    const double sy = min_sigma + 0.08 * uni(rng);
    const double phi = 2.0 * M_PI * uni(rng);
    const double cx = 0.35 * extent * (2.0 * uni(rng) - 1.0);
    const double cy = 0.35 * extent * (2.0 * uni(rng) - 1.0);
    const double amp = 0.2 + 0.8 * uni(rng);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Vec2 x = img.coord0(i, j);
        const double x1 = x.x1 - cx, x2 = x.x2 - cy;
        const double u = std::cos(phi) * x1 + std::sin(phi) * x2;
        const double v = -std::sin(phi) * x1 + std::cos(phi) * x2;
        img(i, j) += amp * std::exp(-0.5 * (u * u / (sx * sx) + v * v / (sy * sy)));
      }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Vec2 x = img.coord0(i, j);
      img(i, j) *= quintic_rolloff(norm(x), content_radius_frac * extent, 0.95 * extent);
    }
  return img;
}

}  // namespace equisym::testing
