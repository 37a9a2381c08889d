#pragma once

#include <string>

#include "equisym/grid.hpp"

namespace equisym {

/// Loads an 8-bit PGM (P2 or P5) or 8-bit grayscale/RGB PNG.
///
/// RGB converts to luma (0.299 R + 0.587 G + 0.114 B), values scale to
/// [0, 1], non-square inputs are center-cropped to the short side with a
/// warning. The attached grid uses unit physical extent, h = 1/side, unless
/// `mesh_override` is positive.
///
/// Unsupported formats or bit depths raise std::runtime_error naming the
/// format; zero-size images raise as well.
Image load_image(const std::string& path, double mesh_override = 0.0);

/// Clamps to [0, 1], quantizes round-half-up to 8 bits, writes binary P5 PGM.
/// A load after save differs from the clamped input by at most 1/510 per
/// pixel. Throws std::runtime_error when the file cannot be written.
void save_image(const Image& image, const std::string& path);

}  // namespace equisym
