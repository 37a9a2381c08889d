#include "equisym/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace equisym {

double quintic_rolloff(double r, double r0, double r1) {
  if (r <= r0) return 1.0;
  if (r >= r1) return 0.0;
  const double s = (r - r0) / (r1 - r0);
  const double s3 = s * s * s;
  return 1.0 - (10.0 * s3 - 15.0 * s3 * s + 6.0 * s3 * s * s);
}

FunctionSpec FunctionSpec::constant(double value) {
  FunctionSpec f;
  f.kind_ = Kind::constant;
  f.value_ = value;
  return f;
}

FunctionSpec FunctionSpec::gaussian(double sigma_x, double sigma_y, double rotation,
                                    double support) {
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0))
    throw std::domain_error("FunctionSpec::gaussian: sigma must be positive");
  if (!(support > 0.0)) throw std::domain_error("FunctionSpec::gaussian: support must be positive");
  FunctionSpec f;
  f.kind_ = Kind::gaussian;
  f.sigma_x_ = sigma_x;
  f.sigma_y_ = sigma_y;
  f.rotation_ = rotation;
  f.support_ = support;
  return f;
}

FunctionSpec FunctionSpec::bump(double radius) {
  if (!(radius > 0.0)) throw std::domain_error("FunctionSpec::bump: radius must be positive");
  FunctionSpec f;
  f.kind_ = Kind::bump;
  f.support_ = radius;
  return f;
}

FunctionSpec FunctionSpec::radial_cosine(double freq, double support) {
  if (!(support > 0.0))
    throw std::domain_error("FunctionSpec::radial_cosine: support must be positive");
  FunctionSpec f;
  f.kind_ = Kind::radial_cosine;
  f.freq_ = freq;
  f.support_ = support;
  return f;
}

double FunctionSpec::operator()(double x1, double x2) const {
  switch (kind_) {
    case Kind::constant:
      return value_;
    case Kind::gaussian: {
      const double r = std::hypot(x1, x2);
      if (r >= support_) return 0.0;
      const double c = std::cos(rotation_), s = std::sin(rotation_);
      const double u = c * x1 + s * x2;
      const double v = -s * x1 + c * x2;
      const double g = std::exp(-0.5 * (u * u / (sigma_x_ * sigma_x_) + v * v / (sigma_y_ * sigma_y_)));
      return g * quintic_rolloff(r, 0.75 * support_, support_);
    }
    case Kind::bump: {
      const double q = (x1 * x1 + x2 * x2) / (support_ * support_);
      if (q >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - q));
    }
    case Kind::radial_cosine: {
      const double r = std::hypot(x1, x2);
      if (r >= support_) return 0.0;
      return std::cos(2.0 * M_PI * freq_ * r) * quintic_rolloff(r, 0.75 * support_, support_);
    }
  }
  return 0.0;
}

Image sample_function(const FunctionSpec& spec, const GridSpec& grid) {
  Image out = Image::zeros(grid);
  const int m = grid.side();
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      out(r, c) = spec(grid.coord(r + 1, c + 1));
    }
  return out;
}

}  // namespace equisym
