#include "equisym/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace equisym::fft {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 Cooley-Tukey, n a power of two.
void radix2(std::span<cplx> a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv;
  }
}

// Cached chirp setup for Bluestein lengths.
struct BluesteinPlan {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<cplx> chirp;       // forward chirp e^{-i pi k^2 / n}
  std::vector<cplx> y_spectrum;  // forward FFT of the padded conjugate chirp
};

const BluesteinPlan& bluestein_plan(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<BluesteinPlan>> plans;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = plans.find(n);
  if (it != plans.end()) return *it->second;
  auto plan = std::make_unique<BluesteinPlan>();
  plan->n = n;
  plan->m = next_pow2(2 * n + 1);
  plan->chirp.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = (k * k) % (2 * n);
    const double ang = -M_PI * static_cast<double>(k2) / static_cast<double>(n);
    plan->chirp[k] = cplx(std::cos(ang), std::sin(ang));
  }
  plan->y_spectrum.assign(plan->m, cplx(0.0, 0.0));
  plan->y_spectrum[0] = std::conj(plan->chirp[0]);
  for (std::size_t k = 1; k < n; ++k)
    plan->y_spectrum[k] = plan->y_spectrum[plan->m - k] = std::conj(plan->chirp[k]);
  radix2(plan->y_spectrum, false);
  const BluesteinPlan& ref = *plan;
  plans.emplace(n, std::move(plan));
  return ref;
}

// Chirp-z for arbitrary n. The inverse transform is the conjugated forward
// transform scaled by 1/n.
void bluestein(std::span<cplx> a, bool inverse) {
  const std::size_t n = a.size();
  const BluesteinPlan& plan = bluestein_plan(n);
  if (inverse)
    for (auto& v : a) v = std::conj(v);
  std::vector<cplx> x(plan.m, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * plan.chirp[k];
  radix2(x, false);
  for (std::size_t k = 0; k < plan.m; ++k) x[k] *= plan.y_spectrum[k];
  radix2(x, true);
  if (inverse) {
    const double invn = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = std::conj(x[k] * plan.chirp[k]) * invn;
  } else {
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * plan.chirp[k];
  }
}

}  // namespace

void transform(std::span<cplx> data, bool inverse) {
  if (data.empty()) return;
  if (is_pow2(data.size()))
    radix2(data, inverse);
  else
    bluestein(data, inverse);
}

void transform_2d(std::span<cplx> data, std::size_t n, bool inverse) {
  if (data.size() != n * n) throw std::invalid_argument("transform_2d: size mismatch");
  for (std::size_t r = 0; r < n; ++r) transform(data.subspan(r * n, n), inverse);
  std::vector<cplx> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = data[r * n + c];
    transform(col, inverse);
    for (std::size_t r = 0; r < n; ++r) data[r * n + c] = col[r];
  }
}

std::vector<cplx> forward_2d(std::span<const double> values, std::size_t n) {
  std::vector<cplx> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = cplx(values[i], 0.0);
  transform_2d(out, n, false);
  return out;
}

std::vector<double> inverse_2d_real(std::span<const cplx> spectrum, std::size_t n) {
  std::vector<cplx> tmp(spectrum.begin(), spectrum.end());
  transform_2d(tmp, n, true);
  std::vector<double> out(tmp.size());
  for (std::size_t i = 0; i < tmp.size(); ++i) out[i] = tmp[i].real();
  return out;
}

double bin_freq(std::size_t k, std::size_t n) {
  const double f = static_cast<double>(k) / static_cast<double>(n);
  return f > 0.5 ? f - 1.0 : f;
}

}  // namespace equisym::fft
