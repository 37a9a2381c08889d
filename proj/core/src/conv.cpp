#include "equisym/conv.hpp"

#include <cmath>
#include <stdexcept>

#include "equisym/parallel.hpp"

namespace equisym {

void cross_correlate_accum(std::span<const double> in, int m, std::span<const double> filter,
                           int p, double scale, std::span<double> out) {
  const int c = (p - 1) / 2;
  for (int i = 0; i < m; ++i) {
    const int a_lo = std::max(0, c - i);
    const int a_hi = std::min(p, m + c - i);
    for (int j = 0; j < m; ++j) {
      const int b_lo = std::max(0, c - j);
      const int b_hi = std::min(p, m + c - j);
      double acc = 0.0;
      for (int a = a_lo; a < a_hi; ++a) {
        const double* row = in.data() + static_cast<std::size_t>(i + a - c) * m + (j - c);
        const double* frow = filter.data() + static_cast<std::size_t>(a) * p;
        for (int b = b_lo; b < b_hi; ++b) acc += row[b] * frow[b];
      }
      out[static_cast<std::size_t>(i) * m + j] += scale * acc;
    }
  }
}

LayerSpec::LayerSpec(FilterBasis b, GroupFamily f, std::vector<FilterCoeffs> c)
    : basis(std::move(b)), family(std::move(f)), coeffs(std::move(c)) {
  if (coeffs.empty()) throw std::domain_error("LayerSpec: at least one coefficient vector required");
  for (const auto& cv : coeffs)
    if (cv.values.size() != static_cast<std::size_t>(basis.count()))
      throw std::domain_error("LayerSpec: coefficient length does not match basis count");
}

FeatureMap lift_conv(const Image& image, const LayerSpec& layer) {
  const int T = layer.family.order();
  const int m = image.side();
  const int p = layer.basis.size();
  const double h = image.grid().mesh();
  FeatureMap out(image.grid(), T);
  parallel::for_index(static_cast<std::size_t>(T), 0, [&](std::size_t t) {
    const auto filter =
        eval_filter(layer.coeffs[0], layer.basis, group_element(layer.family, static_cast<int>(t)));
    cross_correlate_accum(image.values(), m, filter, p, h * h, out.slice(static_cast<int>(t)));
  });
  return out;
}

FeatureMap group_conv(const FeatureMap& features, const LayerSpec& layer) {
  const int T = layer.family.order();
  if (features.order() != T)
    throw std::domain_error("group_conv: feature order does not match layer family");
  if (layer.coeffs.size() != static_cast<std::size_t>(T))
    throw std::domain_error("group_conv: intermediate layer needs one coefficient vector per slice");
  const int m = features.side();
  const int p = layer.basis.size();
  const double h = features.grid().mesh();
  FeatureMap out(features.grid(), T);
  parallel::for_index(static_cast<std::size_t>(T), 0, [&](std::size_t ti) {
    const int t = static_cast<int>(ti);
    const Transform A = group_element(layer.family, t);
    for (int tp = 0; tp < T; ++tp) {
      const auto filter = eval_filter(layer.coeffs[static_cast<std::size_t>(tp)], layer.basis, A);
      cross_correlate_accum(features.slice((t + tp) % T), m, filter, p, h * h, out.slice(t));
    }
  });
  return out;
}

Image project_conv(const FeatureMap& features, const LayerSpec& layer) {
  const int T = layer.family.order();
  if (features.order() != T)
    throw std::domain_error("project_conv: feature order does not match layer family");
  const int m = features.side();
  const int p = layer.basis.size();
  const double h = features.grid().mesh();
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(T));
  parallel::for_index(static_cast<std::size_t>(T), 0, [&](std::size_t ti) {
    const int t = static_cast<int>(ti);
    std::vector<double> acc(static_cast<std::size_t>(m) * m, 0.0);
    const auto filter = eval_filter(layer.coeffs[0], layer.basis, group_element(layer.family, t));
    cross_correlate_accum(features.slice(t), m, filter, p, h * h / T, acc);
    partial[ti] = std::move(acc);
  });
  Image out = Image::zeros(features.grid());
  auto dst = out.values();
  for (int t = 0; t < T; ++t)  // fixed reduction order
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += partial[static_cast<std::size_t>(t)][i];
  return out;
}

Image Pipeline::apply(const Image& image) const {
  FeatureMap f = lift_conv(image, lift);
  for (const auto& layer : middle) f = group_conv(f, layer);
  return project_conv(f, project);
}

EquivarianceTable equivariance_error(const std::function<Image(const Image&)>& op,
                                     const Image& image, const GroupFamily& family, Interp method,
                                     int jobs) {
  const int T = family.order();
  const int m = image.side();
  EquivarianceTable table;
  table.per_element.assign(static_cast<std::size_t>(T), 0.0);
  const Image base = op(image);
  parallel::for_index(static_cast<std::size_t>(T), jobs, [&](std::size_t ti) {
    const Transform A = group_element(family, static_cast<int>(ti));
    const Image lhs = op(act(image, A, method));
    const Image rhs = act(base, A, method);
    double sum = 0.0;
    const auto lv = lhs.values();
    const auto rv = rhs.values();
    for (std::size_t i = 0; i < lv.size(); ++i) {
      const double d = lv[i] - rv[i];
      sum += d * d;
    }
    table.per_element[ti] = sum / (static_cast<double>(m) * m);
  });
  table.max_error = 0.0;
  for (double e : table.per_element) table.max_error = std::max(table.max_error, e);
  return table;
}

FilterCoeffs coeffs_for_modes(const FilterBasis& basis, std::span<const ModeWeight> weights) {
  FilterCoeffs c;
  c.values.assign(static_cast<std::size_t>(basis.count()), 0.0);
  for (const auto& w : weights) {
    const int k = basis.find_mode(w.u, w.v, w.sine);
    if (k >= 0) c.values[static_cast<std::size_t>(k)] = w.weight;
  }
  return c;
}

}  // namespace equisym
