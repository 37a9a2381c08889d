#include "equisym/filter_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace equisym {

double FilterBasis::mask(double r) const {
  const double R = disk_radius();
  const double r0 = 0.75 * R;
  if (r <= r0) return 1.0;
  if (r >= R) return 0.0;
  return 0.5 * (1.0 + std::cos(M_PI * (r - r0) / (R - r0)));
}

double FilterBasis::eval_mode(int k, Vec2 x) const {
  const BasisMode& m = modes_[static_cast<std::size_t>(k)];
  const double r = norm(x);
  const double w = mask(r);
  if (w == 0.0) return 0.0;
  const double arg = 2.0 * M_PI * (m.u * x.x1 + m.v * x.x2) / period();
  return (m.sine ? std::sin(arg) : std::cos(arg)) * w;
}

int FilterBasis::find_mode(int u, int v, bool sine) const {
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const BasisMode& m = modes_[k];
    if (m.u == u && m.v == v && m.sine == sine) return static_cast<int>(k);
    // the (-u,-v) representative carries the same cos mode and the negated sin mode
    if (m.u == -u && m.v == -v && m.sine == sine && !sine) return static_cast<int>(k);
  }
  return -1;
}

FilterBasis make_basis(int p, double mesh) {
  if (p < 3 || p % 2 == 0) throw std::domain_error("make_basis: p must be odd and >= 3");
  if (!(mesh > 0.0)) throw std::domain_error("make_basis: mesh must be positive");
  FilterBasis basis;
  basis.p_ = p;
  basis.mesh_ = mesh;
  const int fmax = (p - 1) / 2;
  for (int u = -fmax; u <= fmax; ++u) {
    for (int v = -fmax; v <= fmax; ++v) {
      if (u * u + v * v > fmax * fmax) continue;
      // canonical representative under (u,v) ~ (-u,-v)
      if (!(u > 0 || (u == 0 && v >= 0))) continue;
      basis.modes_.push_back({u, v, false});
      if (u != 0 || v != 0) basis.modes_.push_back({u, v, true});
    }
  }
  return basis;
}

std::vector<double> eval_filter(const FilterCoeffs& coeffs, const FilterBasis& basis,
                                const Transform& A) {
  if (coeffs.values.size() != static_cast<std::size_t>(basis.count()))
    throw std::domain_error("eval_filter: coefficient length does not match basis count");
  const Transform B = A.inverse();
  const int p = basis.size();
  const GridSpec fg = basis.filter_grid();
  std::vector<double> out(static_cast<std::size_t>(p) * p, 0.0);
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      const Vec2 x = B.apply(fg.coord(a + 1, b + 1));
      double acc = 0.0;
      if (basis.mask(norm(x)) != 0.0) {
        for (int k = 0; k < basis.count(); ++k) {
          const double c = coeffs.values[static_cast<std::size_t>(k)];
          if (c != 0.0) acc += c * basis.eval_mode(k, x);
        }
      }
      out[static_cast<std::size_t>(a) * p + b] = acc;
    }
  }
  return out;
}

double eval_filter_at(const FilterCoeffs& coeffs, const FilterBasis& basis, const Transform& A,
                      Vec2 x) {
  if (coeffs.values.size() != static_cast<std::size_t>(basis.count()))
    throw std::domain_error("eval_filter_at: coefficient length does not match basis count");
  const Vec2 y = A.inverse().apply(x);
  if (basis.mask(norm(y)) == 0.0) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < basis.count(); ++k) {
    const double c = coeffs.values[static_cast<std::size_t>(k)];
    if (c != 0.0) acc += c * basis.eval_mode(k, y);
  }
  return acc;
}

double mode_hessian_bound(const FilterBasis& basis, int k) {
  const BasisMode& m = basis.modes()[static_cast<std::size_t>(k)];
  const double omega = 2.0 * M_PI * std::hypot(m.u, m.v) / basis.period();
  const double w = 0.25 * basis.disk_radius();  // roll-off width
  const double m1 = M_PI / (2.0 * w);
  const double m2 = M_PI * M_PI / (2.0 * w * w);
  return omega * omega + 2.0 * omega * m1 + m2;
}

}  // namespace equisym
