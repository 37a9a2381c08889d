#pragma once

#include <vector>

#include "equisym/grid.hpp"

namespace equisym::testing {

/// Deterministic photographic-style grayscale corpus: oriented textures
/// (gratings plus elongated blobs) over a smooth background with mild
/// isotropic detail, values in [0, 1], content kept inside the inscribed
/// disk. Orientations follow a natural-scene-like distribution dominated by
/// horizontal/vertical structure with a diagonal minority.
std::vector<Image> make_corpus(int count, int side, unsigned seed = 20240613);

/// Single textured image from the same family.
Image make_textured_image(int side, double orientation, double anisotropy, double detail,
                          unsigned seed);

}  // namespace equisym::testing
