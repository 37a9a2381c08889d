#include "equisym/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace equisym {

namespace {

constexpr double kSingularTol = 1e-9;
constexpr double kSnapTol = 5e-16;

double snap(double x) {
  if (std::abs(x) <= kSnapTol) return 0.0;
  if (std::abs(x - 1.0) <= kSnapTol) return 1.0;
  if (std::abs(x + 1.0) <= kSnapTol) return -1.0;
  return x;
}

}  // namespace

Transform Transform::inverse() const {
  const double d = det();
  if (std::abs(d) < kSingularTol)
    throw std::domain_error("Transform::inverse: matrix is singular or near-singular");
  return {a11 / d, -a01 / d, -a10 / d, a00 / d};
}

bool Transform::is_signed_permutation() const {
  auto unit = [](double x) { return x == 1.0 || x == -1.0; };
  const bool diag = unit(a00) && a01 == 0.0 && a10 == 0.0 && unit(a11);
  const bool anti = a00 == 0.0 && unit(a01) && unit(a10) && a11 == 0.0;
  return diag || anti;
}

Transform operator*(const Transform& a, const Transform& b) {
  return {a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
          a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
}

Transform rotation(double theta) {
  if (!std::isfinite(theta)) throw std::domain_error("rotation: theta must be finite");
  const double c = snap(std::cos(theta));
  const double s = snap(std::sin(theta));
  return {c, s, -s, c};
}

AffineParams::AffineParams(double alpha_, double sx_, double sy_)
    : alpha(alpha_), sx(sx_), sy(sy_) {
  if (!std::isfinite(alpha) || !std::isfinite(sx) || !std::isfinite(sy))
    throw std::domain_error("AffineParams: values must be finite");
  if (!(sx > 0.0) || !(sy > 0.0)) throw std::domain_error("AffineParams: scales must be positive");
}

Transform affine(const AffineParams& w) {
  const double c = snap(std::cos(w.alpha));
  const double s = snap(std::sin(w.alpha));
  return {w.sx * c, w.sy * s, -w.sx * s, w.sy * c};
}

GroupFamily::GroupFamily(int order, AffineParams params) : order_(order), params_(params) {
  if (order < 1) throw std::domain_error("GroupFamily: order must be >= 1");
  d_ = affine(params_);
  d_inv_ = d_.inverse();
}

Transform group_element(const GroupFamily& family, int t) {
  if (t < 0 || t >= family.order())
    throw std::domain_error("group_element: index t outside [0, order)");
  const double theta = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(family.order());
  if (family.params().is_identity()) return rotation(theta);
  return family.conjugator() * rotation(theta) * family.conjugator_inv();
}

}  // namespace equisym
