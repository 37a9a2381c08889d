#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace equisym::detail {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;

  explicit GaussLegendre(int n) : nodes(n), weights(n) {
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double p1 = 0.0, dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double pa = 1.0, pb = x;
        for (int j = 2; j <= n; ++j) {
          const double pc = ((2.0 * j - 1.0) * x * pb - (j - 1.0) * pa) / j;
          pa = pb;
          pb = pc;
        }
        p1 = pb;
        dp = n * (x * pb - pa) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  double integrate(double lo, double hi, const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double r = 0.5 * (hi - lo) * nodes[i] + 0.5 * (hi + lo);
      acc += weights[i] * f(r);
    }
    return acc * 0.5 * (hi - lo);
  }
};

}  // namespace equisym::detail
