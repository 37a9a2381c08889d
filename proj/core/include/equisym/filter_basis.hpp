#pragma once

#include <vector>

#include "equisym/grid.hpp"
#include "equisym/transform.hpp"

namespace equisym {

/// One 2D Fourier mode of the basis: trig(2*pi*(u*x1 + v*x2)/period) with a
/// raised-cosine disk mask.
struct BasisMode {
  int u = 0;
  int v = 0;
  bool sine = false;
};

/// Aliasing-limited steerable filter basis on an odd p x p filter grid.
///
/// Modes are 2D Fourier functions with |(u, v)| <= (p-1)/2 (in cycles per
/// filter period, so every mode stays below the cell Nyquist rate) times a
/// radial raised-cosine mask that is 1 for r <= 0.75*R and 0 for r >= R,
/// R = p*mesh/2. Frequency pairs are deduplicated under (u,v) -> (-u,-v) and
/// the zero-frequency sine is dropped, which removes all exact linear
/// dependencies.
class FilterBasis {
 public:
  int size() const { return p_; }           ///< filter side in cells (odd)
  double mesh() const { return mesh_; }
  double period() const { return p_ * mesh_; }
  double disk_radius() const { return 0.5 * p_ * mesh_; }
  int count() const { return static_cast<int>(modes_.size()); }
  const std::vector<BasisMode>& modes() const { return modes_; }

  /// Filter-grid cell centers (Eq. of the image grid with side = p, s = 1).
  GridSpec filter_grid() const { return GridSpec(mesh_, p_, 1); }

  /// Continuous basis function k evaluated anywhere.
  double eval_mode(int k, Vec2 x) const;

  /// Raised-cosine disk mask shared by all modes.
  double mask(double r) const;

  /// Index of a mode by signature, or -1 when absent.
  int find_mode(int u, int v, bool sine) const;

  friend FilterBasis make_basis(int p, double mesh);

 private:
  int p_ = 0;
  double mesh_ = 0.0;
  std::vector<BasisMode> modes_;
};

/// Builds the basis by brute-force enumeration of admissible frequency pairs.
/// Throws std::domain_error unless p is odd, p >= 3, and mesh > 0.
FilterBasis make_basis(int p, double mesh);

/// Coefficient vector v_k against a FilterBasis.
struct FilterCoeffs {
  std::vector<double> values;
};

/// Sampled steered filter: filter[a][b] = sum_k coeffs_k * phi_k(A^{-1} t_ab)
/// over the filter-grid cell centers t_ab. Returned row-major, p x p.
///
/// Throws std::domain_error when the coefficient length does not match the
/// basis or A is near-singular.
std::vector<double> eval_filter(const FilterCoeffs& coeffs, const FilterBasis& basis,
                                const Transform& A);

/// Continuous steered filter value at an arbitrary point.
double eval_filter_at(const FilterCoeffs& coeffs, const FilterBasis& basis, const Transform& A,
                      Vec2 x);

/// Product-rule bound on |second partial derivatives| of mode k:
/// omega^2 + 2*omega*M1 + M2 with omega the mode's angular spatial frequency
/// and M1, M2 the mask's first/second derivative bounds.
double mode_hessian_bound(const FilterBasis& basis, int k);

}  // namespace equisym
