#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "equisym/fft.hpp"

using namespace equisym;
using fft::cplx;

namespace {

// O(n^2) reference DFT
std::vector<cplx> naive_dft(std::span<const cplx> x, bool inverse) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = (inverse ? 2.0 : -2.0) * M_PI * static_cast<double>(k * t) / n;
      out[k] += x[t] * cplx(std::cos(ang), std::sin(ang));
    }
    if (inverse) out[k] /= static_cast<double>(n);
  }
  return out;
}

std::vector<cplx> random_signal(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<cplx> x(n);
  for (auto& v : x) v = cplx(uni(rng), uni(rng));
  return x;
}

}  // namespace

TEST_CASE("matches the naive DFT for power-of-two and odd lengths") {
  for (std::size_t n : {4u, 8u, 16u, 5u, 7u, 12u, 96u, 100u}) {
    auto x = random_signal(n, 10 + static_cast<unsigned>(n));
    auto got = x;
    fft::transform(got, false);
    const auto want = naive_dft(x, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("inverse round trip") {
  for (std::size_t n : {8u, 21u, 96u, 128u}) {
    const auto x = random_signal(n, 3 * static_cast<unsigned>(n));
    auto y = x;
    fft::transform(y, false);
    fft::transform(y, true);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(y[i] - x[i]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("2d transform round trip and real helpers") {
  const std::size_t n = 24;
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> img(n * n);
  for (auto& v : img) v = uni(rng);
  const auto spec = fft::forward_2d(img, n);
  const auto back = fft::inverse_2d_real(spec, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) worst = std::max(worst, std::abs(back[i] - img[i]));
  CHECK(worst <= 1e-12);

  // Parseval
  double spatial = 0.0, spectral = 0.0;
  for (double v : img) spatial += v * v;
  for (const auto& s : spec) spectral += std::norm(s);
  CHECK(spatial == doctest::Approx(spectral / static_cast<double>(n * n)).epsilon(1e-12));
}

TEST_CASE("bin frequencies") {
  CHECK(fft::bin_freq(0, 8) == 0.0);
  CHECK(fft::bin_freq(1, 8) == doctest::Approx(0.125));
  CHECK(fft::bin_freq(4, 8) == doctest::Approx(0.5));
  CHECK(fft::bin_freq(5, 8) == doctest::Approx(-0.375));
  CHECK(fft::bin_freq(7, 8) == doctest::Approx(-0.125));
}
