#pragma once

#include <functional>
#include <vector>

#include "equisym/feature_map.hpp"
#include "equisym/filter_basis.hpp"
#include "equisym/grid.hpp"
#include "equisym/transform.hpp"

namespace equisym {

/// One equivariant layer: a steerable basis, the transformation family, and
/// coefficient vectors. Lifting and projection layers carry a single
/// coefficient vector; intermediate group layers carry one per input slice.
struct LayerSpec {
  FilterBasis basis;
  GroupFamily family;
  std::vector<FilterCoeffs> coeffs;

  LayerSpec(FilterBasis b, GroupFamily f, std::vector<FilterCoeffs> c);
};

/// Lifting layer: slice t is the zero-padded cross-correlation of the image
/// with eval_filter(coeffs, basis, element(t)), scaled by h^2.
FeatureMap lift_conv(const Image& image, const LayerSpec& layer);

/// Intermediate group layer:
/// out(x, t) = sum_{t'} xcorr(slice (t+t') mod T, filter(coeffs_{t'}, element(t))) * h^2.
/// Throws std::domain_error when the feature order does not match the layer.
FeatureMap group_conv(const FeatureMap& features, const LayerSpec& layer);

/// Output projection: group mean of per-slice correlations with the steered
/// filter, scaled by h^2. The composition lift -> (group)* -> project is
/// equivariant under the image action.
Image project_conv(const FeatureMap& features, const LayerSpec& layer);

/// lift -> middle... -> project composition, applied as an Image -> Image map.
struct Pipeline {
  LayerSpec lift;
  std::vector<LayerSpec> middle;
  LayerSpec project;

  Image apply(const Image& image) const;
};

/// Per-element equivariance errors of an Image -> Image map under a family:
/// e_t = ||op(act(img, A_t)) - act(op(img), A_t)||_F^2 / m^2.
struct EquivarianceTable {
  std::vector<double> per_element;
  double max_error = 0.0;
};

EquivarianceTable equivariance_error(const std::function<Image(const Image&)>& op,
                                     const Image& image, const GroupFamily& family,
                                     Interp method = Interp::bilinear, int jobs = 1);

/// Zero-padded cross-correlation, accumulated into `out`:
/// out[i][j] += scale * sum_ab in[i+a-c][j+b-c] * filter[a][b], c = (p-1)/2.
void cross_correlate_accum(std::span<const double> in, int m, std::span<const double> filter,
                           int p, double scale, std::span<double> out);

/// Weight for one named mode when assembling coefficients across resolutions.
struct ModeWeight {
  int u = 0;
  int v = 0;
  bool sine = false;
  double weight = 0.0;
};

/// Coefficient vector holding the given weights at the matching modes of
/// `basis` (absent modes are skipped, everything else is zero). Lets a fixed
/// physical filter be instantiated on bases of different size.
FilterCoeffs coeffs_for_modes(const FilterBasis& basis, std::span<const ModeWeight> weights);

}  // namespace equisym
