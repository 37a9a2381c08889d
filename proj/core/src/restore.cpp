#include "equisym/restore.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "equisym/conv.hpp"

namespace equisym {

void RestorationConfig::validate() const {
  if (lambda < 0.0) throw std::domain_error("RestorationConfig: lambda must be >= 0");
  if (iters < 1) throw std::domain_error("RestorationConfig: iters must be >= 1");
  if (!(huber_delta > 0.0)) throw std::domain_error("RestorationConfig: huber_delta must be > 0");
  if (kernel == Kernel::gaussian && !(kernel_sigma > 0.0))
    throw std::domain_error("RestorationConfig: gaussian kernel needs sigma > 0");
  if (!(step_scale > 0.0)) throw std::domain_error("RestorationConfig: step_scale must be > 0");
}

std::vector<double> restoration_kernel(const RestorationConfig& config, double mesh, int* p_out) {
  if (config.kernel == RestorationConfig::Kernel::delta) {
    if (p_out) *p_out = 1;
    return {1.0};
  }
  const double sigma = config.kernel_sigma;
  int half = static_cast<int>(std::ceil(3.0 * sigma / mesh));
  if (half < 1) half = 1;
  const int p = 2 * half + 1;
  std::vector<double> taps(static_cast<std::size_t>(p) * p);
  double sum = 0.0;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      const double x1 = (a - half) * mesh;
      const double x2 = (b - half) * mesh;
      const double v = std::exp(-(x1 * x1 + x2 * x2) / (2.0 * sigma * sigma));
      taps[static_cast<std::size_t>(a) * p + b] = v;
      sum += v;
    }
  for (auto& t : taps) t /= sum;
  if (p_out) *p_out = p;
  return taps;
}

namespace {

struct Objective {
  const Image* degraded;
  std::vector<double> kernel;
  std::vector<double> kernel_flipped;
  int p = 1;
  double lambda = 0.0;
  double delta = 1e-3;
  TVMode tv = TVMode::isotropic;
  double h = 1.0;
  int m = 0;

  // residual = K * Y - Yhat
  void residual(std::span<const double> y, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    cross_correlate_accum(y, m, kernel, p, 1.0, out);
    const auto d = degraded->values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= d[i];
  }

  double value(std::span<const double> y, std::span<double> scratch) const {
    residual(y, scratch);
    double data = 0.0;
    for (double r : scratch) data += r * r;
    double reg = 0.0;
    if (lambda > 0.0) {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          const double dx = i + 1 < m ? (y[(i + 1) * static_cast<std::size_t>(m) + j] -
                                         y[i * static_cast<std::size_t>(m) + j]) / h
                                      : 0.0;
          const double dy = (tv == TVMode::isotropic && j + 1 < m)
                                ? (y[i * static_cast<std::size_t>(m) + j + 1] -
                                   y[i * static_cast<std::size_t>(m) + j]) / h
                                : 0.0;
          reg += std::sqrt(dx * dx + dy * dy + delta * delta) - delta;
        }
    }
    return h * h * (data + lambda * reg);
  }

  void gradient(std::span<const double> y, std::span<double> grad, std::span<double> scratch) const {
    residual(y, scratch);
    std::fill(grad.begin(), grad.end(), 0.0);
    cross_correlate_accum(scratch, m, kernel_flipped, p, 2.0 * h * h, grad);
    if (lambda <= 0.0) return;
    const double w = lambda * h * h / h;  // chain rule through the /h in the differences
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i) * m + j;
        const double dx = i + 1 < m ? (y[idx + static_cast<std::size_t>(m)] - y[idx]) / h : 0.0;
        const double dy = (tv == TVMode::isotropic && j + 1 < m) ? (y[idx + 1] - y[idx]) / h : 0.0;
        const double denom = std::sqrt(dx * dx + dy * dy + delta * delta);
        const double gx = dx / denom;
        const double gy = dy / denom;
        if (i + 1 < m) {
          grad[idx] -= w * gx;
          grad[idx + static_cast<std::size_t>(m)] += w * gx;
        }
        if (tv == TVMode::isotropic && j + 1 < m) {
          grad[idx] -= w * gy;
          grad[idx + 1] += w * gy;
        }
      }
  }
};

// Largest eigenvalue of 2*h^2*K^T K by power iteration (deterministic seed).
double data_term_lipschitz(const Objective& obj) {
  const std::size_t n = static_cast<std::size_t>(obj.m) * obj.m;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> v(n), kv(n), ktkv(n);
  for (auto& x : v) x = uni(rng);
  double lam = 1.0;
  for (int it = 0; it < 25; ++it) {
    std::fill(kv.begin(), kv.end(), 0.0);
    cross_correlate_accum(v, obj.m, obj.kernel, obj.p, 1.0, kv);
    std::fill(ktkv.begin(), ktkv.end(), 0.0);
    cross_correlate_accum(kv, obj.m, obj.kernel_flipped, obj.p, 1.0, ktkv);
    double norm = 0.0;
    for (double x : ktkv) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 2.0 * obj.h * obj.h;
    lam = norm;
    for (std::size_t i = 0; i < n; ++i) v[i] = ktkv[i] / norm;
  }
  return 2.0 * obj.h * obj.h * lam;
}

[[noreturn]] void throw_with_trace(const char* what, const std::vector<double>& trace) {
  std::ostringstream os;
  os << what << "; objective trace:";
  for (double v : trace) os << ' ' << v;
  throw std::runtime_error(os.str());
}

}  // namespace

RestoreResult restore(const Image& degraded, const RestorationConfig& config) {
  config.validate();
  const int m = degraded.side();
  const double h = degraded.grid().mesh();

  Objective obj;
  obj.degraded = &degraded;
  obj.kernel = restoration_kernel(config, h, &obj.p);
  obj.kernel_flipped.assign(obj.kernel.rbegin(), obj.kernel.rend());
  obj.lambda = config.lambda;
  obj.delta = config.huber_delta;
  obj.tv = config.tv;
  obj.h = h;
  obj.m = m;

  std::vector<double> y(degraded.values().begin(), degraded.values().end());
  std::vector<double> grad(y.size()), scratch(y.size()), candidate(y.size());

  // Lipschitz estimate: data term by power iteration plus the Huber-TV
  // curvature bound lambda * 8 / delta.
  const double lips = data_term_lipschitz(obj) +
                      (config.lambda > 0.0 ? 8.0 * config.lambda / config.huber_delta : 0.0);
  double step = config.step_scale / std::max(lips, 1e-30);

  RestoreResult result{Image::zeros(degraded.grid()), {}, 0};
  double current = obj.value(y, scratch);
  if (!std::isfinite(current)) throw_with_trace("restore: non-finite objective", result.trace);
  result.trace.push_back(current);

  for (int it = 0; it < config.iters; ++it) {
    obj.gradient(y, grad, scratch);
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    if (!std::isfinite(gnorm2)) throw_with_trace("restore: non-finite gradient", result.trace);
    if (gnorm2 == 0.0) break;

    bool accepted = false;
    double s = step;
    for (int halving = 0; halving <= 20; ++halving) {
      for (std::size_t i = 0; i < y.size(); ++i) candidate[i] = y[i] - s * grad[i];
      const double value = obj.value(candidate, scratch);
      if (!std::isfinite(value)) throw_with_trace("restore: non-finite objective", result.trace);
      if (value < current) {
        y.swap(candidate);
        current = value;
        result.trace.push_back(current);
        ++result.effective_updates;
        accepted = true;
        step = s;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;  // stationary up to rounding
  }

  result.image = Image(degraded.grid(), std::move(y));
  return result;
}

}  // namespace equisym
