#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace equisym::fft {

using cplx = std::complex<double>;

/// In-place forward/inverse DFT of arbitrary length (radix-2 when the length
/// is a power of two, Bluestein otherwise). The inverse includes the 1/n
/// factor, so inverse(forward(x)) == x up to rounding.
void transform(std::span<cplx> data, bool inverse);

/// 2D DFT of an n x n row-major array, rows then columns.
void transform_2d(std::span<cplx> data, std::size_t n, bool inverse);

/// Forward 2D DFT of a real n x n array.
std::vector<cplx> forward_2d(std::span<const double> values, std::size_t n);

/// Real part of the inverse 2D DFT (the imaginary part is discarded).
std::vector<double> inverse_2d_real(std::span<const cplx> spectrum, std::size_t n);

/// DFT sample frequency for bin k of an n-point transform, in cycles per
/// sample: k/n mapped to the signed range (-1/2, 1/2].
double bin_freq(std::size_t k, std::size_t n);

}  // namespace equisym::fft
