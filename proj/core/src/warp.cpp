#include "equisym/warp.hpp"

#include <cmath>
#include <stdexcept>

namespace equisym {

namespace {

// Keys cubic convolution kernel, a = -1/2.
double cubic_weight(double t) {
  t = std::abs(t);
  if (t <= 1.0) return (1.5 * t - 2.5) * t * t + 1.0;
  if (t < 2.0) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
  return 0.0;
}

inline double tap(std::span<const double> in, int m, int r, int c) {
  if (r < 0 || r >= m || c < 0 || c >= m) return 0.0;
  return in[static_cast<std::size_t>(r) * m + c];
}

// Exact path for transforms whose inverse is a signed permutation: map
// centered indices through B without any float round-off ambiguity.
void permute_plane(std::span<const double> in, std::span<double> out, int m, const Transform& B) {
  const double center = (m - 1) / 2.0;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      const double ci = r - center;
      const double cj = c - center;
      const double si = B.a00 * ci + B.a01 * cj + center;
      const double sj = B.a10 * ci + B.a11 * cj + center;
      const int ri = static_cast<int>(std::lround(si));
      const int rj = static_cast<int>(std::lround(sj));
      out[static_cast<std::size_t>(r) * m + c] = tap(in, m, ri, rj);
    }
  }
}

}  // namespace

void warp_plane(std::span<const double> in, std::span<double> out, const GridSpec& grid,
                const Transform& A, Interp method) {
  const int m = grid.side();
  if (in.size() != static_cast<std::size_t>(m) * m || out.size() != in.size())
    throw std::domain_error("warp_plane: buffer size does not match grid");
  if (std::abs(A.det()) < 1e-9) throw std::domain_error("warp_plane: near-singular transform");

  if (A.is_identity()) {
    std::copy(in.begin(), in.end(), out.begin());
    return;
  }
  const Transform B = A.inverse();
  if (B.is_signed_permutation()) {
    permute_plane(in, out, m, B);
    return;
  }

  const double sh = grid.step();
  const double center = (m + 1) / 2.0;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      const Vec2 y = grid.coord(r + 1, c + 1);
      const Vec2 src = B.apply(y);
      // fractional 1-based indices of the source point
      const double fi = src.x1 / sh + center;
      const double fj = src.x2 / sh + center;
      double value = 0.0;
      if (fi >= 1.0 && fi <= m && fj >= 1.0 && fj <= m) {
        if (method == Interp::bilinear) {
          int i0 = static_cast<int>(std::floor(fi));
          int j0 = static_cast<int>(std::floor(fj));
          if (i0 == m) i0 = m - 1;
          if (j0 == m) j0 = m - 1;
          const double di = fi - i0;
          const double dj = fj - j0;
          const double v00 = tap(in, m, i0 - 1, j0 - 1);
          const double v01 = tap(in, m, i0 - 1, j0);
          const double v10 = tap(in, m, i0, j0 - 1);
          const double v11 = tap(in, m, i0, j0);
          value = (1.0 - di) * ((1.0 - dj) * v00 + dj * v01) + di * ((1.0 - dj) * v10 + dj * v11);
        } else {
          const int i0 = static_cast<int>(std::floor(fi));
          const int j0 = static_cast<int>(std::floor(fj));
          for (int a = -1; a <= 2; ++a) {
            const double wi = cubic_weight(fi - (i0 + a));
            if (wi == 0.0) continue;
            for (int b = -1; b <= 2; ++b) {
              const double wj = cubic_weight(fj - (j0 + b));
              if (wj == 0.0) continue;
              value += wi * wj * tap(in, m, i0 + a - 1, j0 + b - 1);
            }
          }
        }
      }
      out[static_cast<std::size_t>(r) * m + c] = value;
    }
  }
}

Image act(const Image& image, const Transform& A, Interp method) {
  Image out = Image::zeros(image.grid());
  warp_plane(image.values(), out.values(), image.grid(), A, method);
  return out;
}

}  // namespace equisym
