#pragma once

#include "equisym/grid.hpp"

namespace equisym {

/// 2x2 real matrix acting on image coordinates. Group elements built by
/// group_element() always have determinant 1 up to rounding; anything with
/// |det| < 1e-9 is rejected where an inverse is required.
struct Transform {
  // Row-major entries.
  double a00 = 1.0, a01 = 0.0, a10 = 0.0, a11 = 1.0;

  static Transform identity() { return {}; }

  double det() const { return a00 * a11 - a01 * a10; }
  Transform inverse() const;  ///< Throws std::domain_error when |det| < 1e-9.
  Transform transposed() const { return {a00, a10, a01, a11}; }

  Vec2 apply(Vec2 p) const { return {a00 * p.x1 + a01 * p.x2, a10 * p.x1 + a11 * p.x2}; }

  bool is_identity() const { return a00 == 1.0 && a01 == 0.0 && a10 == 0.0 && a11 == 1.0; }

  /// True when every entry is exactly 0 or +-1 in a permutation pattern, i.e.
  /// the transform maps the centered index lattice onto itself exactly.
  bool is_signed_permutation() const;

  bool operator==(const Transform&) const = default;
};

Transform operator*(const Transform& a, const Transform& b);

/// Rotation matrix [[cos t, sin t], [-sin t, cos t]]. Entries within 5e-16 of
/// 0 or +-1 are snapped exactly, so multiples of pi/2 yield exact signed
/// permutations.
Transform rotation(double theta);

/// Affine parameters w = [alpha, s_x, s_y] of the conjugating matrix D_w.
struct AffineParams {
  double alpha = 0.0;
  double sx = 1.0;
  double sy = 1.0;

  AffineParams() = default;
  /// Throws std::domain_error unless both scales are positive and all values finite.
  AffineParams(double alpha, double sx, double sy);

  bool is_identity() const { return alpha == 0.0 && sx == 1.0 && sy == 1.0; }
  bool operator==(const AffineParams&) const = default;
};

/// D_w = [[s_x cos a, s_y sin a], [-s_x sin a, s_y cos a]]; det = s_x * s_y.
Transform affine(const AffineParams& w);

/// Cyclic rotation group of the given order conjugated by D_w:
/// element(t) = D_w * rotation(2*pi*t/order) * D_w^{-1}.
class GroupFamily {
 public:
  /// Throws std::domain_error when order < 1.
  GroupFamily(int order, AffineParams params = {});

  int order() const { return order_; }
  const AffineParams& params() const { return params_; }
  const Transform& conjugator() const { return d_; }
  const Transform& conjugator_inv() const { return d_inv_; }

  bool operator==(const GroupFamily&) const = default;

 private:
  int order_;
  AffineParams params_;
  Transform d_;
  Transform d_inv_;
};

/// element t of the family; det = 1 within rounding. Throws std::domain_error
/// when t is outside [0, order).
Transform group_element(const GroupFamily& family, int t);

}  // namespace equisym
