#pragma once

#include "equisym/grid.hpp"
#include "equisym/transform.hpp"

namespace equisym {

enum class Interp { bilinear, bicubic };

/// Pull-back action on rasters: output(x) = interpolate(input, A^{-1} x).
/// Sample points outside the grid's coordinate hull evaluate to 0.
///
/// Identity returns a bitwise copy. Transforms whose inverse maps the
/// centered index lattice onto itself (90-degree rotations and reflections)
/// are applied as exact array permutations.
///
/// Throws std::domain_error when |det A| < 1e-9.
Image act(const Image& image, const Transform& A, Interp method = Interp::bilinear);

/// Same warp on a raw row-major plane of side m bound to `grid`.
void warp_plane(std::span<const double> in, std::span<double> out, const GridSpec& grid,
                const Transform& A, Interp method);

}  // namespace equisym
