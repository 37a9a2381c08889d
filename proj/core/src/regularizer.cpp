#include "equisym/regularizer.hpp"

#include <Eigen/Dense>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <stdexcept>

#include "equisym/analytic.hpp"
#include "equisym/fft.hpp"
#include "quadrature_util.hpp"

namespace equisym {

namespace {

// Stencil taps become band-limited impulses: a radial raised-cosine spectral
// window, flat to kWindowPass and zero at kWindowStop cycles per cell (below
// every candidate basis cutoff). This keeps the classical stencils' full
// in-band angular character; steering happens spectrally, so sampling
// aliasing is not a concern.
constexpr double kWindowPass = 0.28;
constexpr double kWindowStop = 0.44;
constexpr double kResidualLimit = 0.05;

// Frequency-table resolution: kOversample samples per cell over kExtent
// cells, i.e. dq = 1/kExtent, covering |q| <= kOversample/2 = 1.5 cycles per
// cell (enough for the frequency stretch of bounded conjugations). The table
// stays small enough to be cache-resident during steering.
constexpr int kOversample = 3;
constexpr int kExtent = 80;

// Radial impulse response of the spectral window, tabulated once.
double blob(double r) {
  static const std::vector<double> table = [] {
    const int nr = 2000;
    const double dr = 0.005;
    const int nq = 600;
    const double dq = kWindowStop / nq;
    std::vector<double> out(nr);
    for (int i = 0; i < nr; ++i) {
      const double rr = i * dr;
      double acc = 0.0;
      for (int q = 0; q < nq; ++q) {
        const double nu = (q + 0.5) * dq;
        double w = 1.0;
        if (nu > kWindowPass)
          w = 0.5 * (1.0 + std::cos(M_PI * (nu - kWindowPass) / (kWindowStop - kWindowPass)));
        acc += w * std::cyl_bessel_j(0, 2.0 * M_PI * nu * rr) * nu;
      }
      out[i] = 2.0 * M_PI * acc * dq;
    }
    return out;
  }();
  const double x = r / 0.005;
  const int i = static_cast<int>(x);
  if (i + 1 >= static_cast<int>(table.size())) return 0.0;
  const double f = x - i;
  return table[static_cast<std::size_t>(i)] * (1.0 - f) + table[static_cast<std::size_t>(i) + 1] * f;
}

struct Stencil {
  double w[3][3];  // w[a][b], offset (a-1, b-1) in (x1, x2) cells
};

std::vector<Stencil> stencils_for(RegName name) {
  const Stencil dx{{{0, -0.5, 0}, {0, 0, 0}, {0, 0.5, 0}}};   // d/dx1 central difference
  const Stencil dy{{{0, 0, 0}, {-0.5, 0, 0.5}, {0, 0, 0}}};   // d/dx2
  const Stencil sobel_x{{{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}}};
  const Stencil sobel_y{{{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}};
  const Stencil prewitt_x{{{-1, -1, -1}, {0, 0, 0}, {1, 1, 1}}};
  const Stencil prewitt_y{{{-1, 0, 1}, {-1, 0, 1}, {-1, 0, 1}}};
  const Stencil lap{{{0, 1, 0}, {1, -4, 1}, {0, 1, 0}}};
  const Stencil dxx{{{0, 1, 0}, {0, -2, 0}, {0, 1, 0}}};
  const Stencil dyy{{{0, 0, 0}, {1, -2, 1}, {0, 0, 0}}};
  const Stencil dxy{{{0.25, 0, -0.25}, {0, 0, 0}, {-0.25, 0, 0.25}}};
  switch (name) {
    case RegName::tv: return {dx, dy};
    case RegName::sobel: return {sobel_x, sobel_y};
    case RegName::prewitt: return {prewitt_x, prewitt_y};
    case RegName::laplacian: return {lap};
    case RegName::tv2: return {dxx, dxy, dxy, dyy};
  }
  throw std::domain_error("unknown regularizer");
}

double mollified_stencil(const Stencil& st, Vec2 x) {
  double out = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double w = st.w[a][b];
      if (w != 0.0) out += w * blob(std::hypot(x.x1 - (a - 1), x.x2 - (b - 1)));
    }
  return out;
}

// Integral of basis mode k over the plane. Sine modes vanish by symmetry;
// cosine modes reduce to a Hankel-type radial integral against J0, split at
// the mask kink.
double mode_integral(const FilterBasis& basis, int k) {
  const BasisMode& m = basis.modes()[static_cast<std::size_t>(k)];
  if (m.sine) return 0.0;
  const double R = basis.disk_radius();
  const double freq = 2.0 * M_PI * std::hypot(m.u, m.v) / basis.period();
  static const detail::GaussLegendre gl(128);
  auto f = [&](double r) { return basis.mask(r) * std::cyl_bessel_j(0, freq * r) * r; };
  return 2.0 * M_PI * (gl.integrate(0.0, 0.75 * R, f) + gl.integrate(0.75 * R, R, f));
}

// Least-squares projection of the mollified stencil onto the basis under a
// zero-integral constraint. Returns coefficients and the relative residual.
std::pair<FilterCoeffs, double> project_stencil(const FilterBasis& basis, const Stencil& st) {
  const int p = basis.size();
  const int K = basis.count();
  const GridSpec fg = basis.filter_grid();
  Eigen::MatrixXd B(p * p, K);
  Eigen::VectorXd target(p * p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      const Vec2 x = fg.coord(a + 1, b + 1);
      const int row = a * p + b;
      target(row) = mollified_stencil(st, x);
      for (int k = 0; k < K; ++k) B(row, k) = basis.eval_mode(k, x);
    }
  Eigen::VectorXd g(K);
  for (int k = 0; k < K; ++k) g(k) = mode_integral(basis, k);

  // Zero-integral constraint via null-space projection: restrict the fit to
  // coefficients orthogonal to g, with a rank-revealing solve (the sampled
  // Gram can be nearly rank deficient near the frequency cutoff).
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(K, K);
  const double gnorm2 = g.squaredNorm();
  if (gnorm2 > 1e-24) P -= (g * g.transpose()) / gnorm2;
  const Eigen::VectorXd z =
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(B * P).solve(target);
  const Eigen::VectorXd c = P * z;
  const double residual = (B * c - target).norm() / target.norm();
  FilterCoeffs out;
  out.values.assign(c.data(), c.data() + K);
  return {out, residual};
}

SpectralTable build_table(const FilterBasis& basis, const FilterCoeffs& coeffs) {
  const int n = kOversample * kExtent;
  const double sample_step = 1.0 / kOversample;  // cells
  const double support = basis.disk_radius();
  std::vector<fft::cplx> data(static_cast<std::size_t>(n) * n, fft::cplx(0.0, 0.0));
  // Spatial samples in DFT wraparound order so the origin sits at index 0.
  const Transform id = Transform::identity();
  for (int i = 0; i < n; ++i) {
    const double x1 = (i <= n / 2 ? i : i - n) * sample_step;
    if (std::abs(x1) > support) continue;
    for (int j = 0; j < n; ++j) {
      const double x2 = (j <= n / 2 ? j : j - n) * sample_step;
      if (std::abs(x2) > support) continue;
      const double v = eval_filter_at(coeffs, basis, id, {x1, x2});
      if (v != 0.0) data[static_cast<std::size_t>(i) * n + j] = fft::cplx(v, 0.0);
    }
  }
  fft::transform_2d(data, static_cast<std::size_t>(n), false);
  // shift to a monotone frequency axis and scale by the sample area
  const double area = sample_step * sample_step;
  std::vector<fft::cplx> shifted(data.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int si = (i + n / 2) % n;
      const int sj = (j + n / 2) % n;
      shifted[static_cast<std::size_t>(si) * n + sj] = data[static_cast<std::size_t>(i) * n + j] * area;
    }
  // kernels are built with zero integral; pin the DC bin so constants are
  // annihilated exactly at every transform
  shifted[static_cast<std::size_t>(n / 2) * n + n / 2] = fft::cplx(0.0, 0.0);
  const double dq = 1.0 / kExtent;  // cycles per cell
  return SpectralTable(n, dq, std::move(shifted));
}

}  // namespace

RegName parse_reg_name(const std::string& name) {
  if (name == "tv") return RegName::tv;
  if (name == "tv2") return RegName::tv2;
  if (name == "sobel") return RegName::sobel;
  if (name == "laplacian") return RegName::laplacian;
  if (name == "prewitt") return RegName::prewitt;
  throw std::domain_error("unknown regularizer name: " + name);
}

std::string to_string(RegName name) {
  switch (name) {
    case RegName::tv: return "tv";
    case RegName::tv2: return "tv2";
    case RegName::sobel: return "sobel";
    case RegName::laplacian: return "laplacian";
    case RegName::prewitt: return "prewitt";
  }
  return "?";
}

std::vector<RegName> all_reg_names() {
  return {RegName::tv, RegName::tv2, RegName::sobel, RegName::laplacian, RegName::prewitt};
}

SpectralTable::SpectralTable(int n, double dq, std::vector<std::complex<double>> values)
    : n_(n), dq_(dq), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(n_) * n_)
    throw std::domain_error("SpectralTable: size mismatch");
}

namespace {

// Catmull-Rom weights for the four taps around t in [0, 1).
inline void catmull_rom(double t, double w[4]) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

}  // namespace

std::complex<double> SpectralTable::operator()(double qx, double qy) const {
  const double fx = qx / dq_ + n_ / 2;
  const double fy = qy / dq_ + n_ / 2;
  // bicubic needs one extra tap on each side
  if (fx < 1.0 || fy < 1.0 || fx > n_ - 3 || fy > n_ - 3) return {0.0, 0.0};
  const int i0 = static_cast<int>(fx);
  const int j0 = static_cast<int>(fy);
  double wi[4], wj[4];
  catmull_rom(fx - i0, wi);
  catmull_rom(fy - j0, wj);
  std::complex<double> acc(0.0, 0.0);
  for (int a = 0; a < 4; ++a) {
    const std::complex<double>* row = values_.data() + static_cast<std::size_t>(i0 - 1 + a) * n_ + (j0 - 1);
    acc += wi[a] * (wj[0] * row[0] + wj[1] * row[1] + wj[2] * row[2] + wj[3] * row[3]);
  }
  return acc;
}

RegularizerSpec RegularizerSpec::make(RegName name) {
  const auto sts = stencils_for(name);
  RegularizerSpec spec;
  spec.name_ = name;
  for (int p : {9, 11, 13}) {
    FilterBasis basis = make_basis(p, 1.0);
    std::vector<FilterCoeffs> kernels;
    double worst = 0.0;
    for (const auto& st : sts) {
      auto [c, res] = project_stencil(basis, st);
      if (std::getenv("EQUISYM_DEBUG_RESIDUAL"))
        std::fprintf(stderr, "reg %s p=%d residual %.4f\n", to_string(name).c_str(), p, res);
      worst = std::max(worst, res);
      kernels.push_back(std::move(c));
    }
    if (worst <= kResidualLimit) {
      spec.basis_ = std::move(basis);
      spec.kernels_ = std::move(kernels);
      spec.residual_ = worst;
      for (const auto& k : spec.kernels_) spec.tables_.push_back(build_table(spec.basis_, k));
      return spec;
    }
  }
  throw std::domain_error("RegularizerSpec: stencil projection residual above 5% at the largest basis");
}

ResponseEngine::ResponseEngine(const Image& image, const RegularizerSpec& reg)
    : reg_(reg), m_(image.side()) {
  if (m_ < 2 * reg.border() + 2)
    throw std::domain_error("ResponseEngine: image too small for the regularizer border");
  image_spectrum_ = fft::forward_2d(image.values(), static_cast<std::size_t>(m_));
}

double ResponseEngine::response(const Transform& A) const {
  if (std::abs(A.det()) < 1e-9) throw std::domain_error("ResponseEngine: near-singular transform");
  const int m = m_;
  const Transform At = A.transposed();
  const std::size_t npix = static_cast<std::size_t>(m) * m;
  std::vector<fft::cplx> prod(npix);
  std::vector<double> acc(npix, 0.0);
  const auto& tables = reg_.tables();
  // All product spectra are Hermitian (real image, real kernels), so two
  // kernels share one inverse transform: pack them into real and imaginary
  // parts and read both fields back from one pass.
  for (std::size_t k = 0; k < tables.size(); k += 2) {
    const bool paired = k + 1 < tables.size();
    const SpectralTable& ta = tables[k];
    const SpectralTable* tb = paired ? &tables[k + 1] : nullptr;
    for (int i = 0; i < m; ++i) {
      const double fi = fft::bin_freq(static_cast<std::size_t>(i), static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) {
        const double fj = fft::bin_freq(static_cast<std::size_t>(j), static_cast<std::size_t>(m));
        const Vec2 q = At.apply({fi, fj});
        const fft::cplx s = image_spectrum_[static_cast<std::size_t>(i) * m + j];
        fft::cplx v = s * std::conj(ta(q.x1, q.x2));
        if (paired) v += fft::cplx(0.0, 1.0) * (s * std::conj((*tb)(q.x1, q.x2)));
        prod[static_cast<std::size_t>(i) * m + j] = v;
      }
    }
    fft::transform_2d(prod, static_cast<std::size_t>(m), true);
    if (paired) {
      for (std::size_t idx = 0; idx < npix; ++idx)
        acc[idx] += std::abs(prod[idx].real()) + std::abs(prod[idx].imag());
    } else {
      for (std::size_t idx = 0; idx < npix; ++idx) acc[idx] += std::abs(prod[idx].real());
    }
  }
  const int b = reg_.border();
  double sum = 0.0;
  std::size_t count = 0;
  for (int i = b; i < m - b; ++i)
    for (int j = b; j < m - b; ++j) {
      sum += acc[static_cast<std::size_t>(i) * m + j];
      ++count;
    }
  return sum / static_cast<double>(count);
}

double feature_response(const Image& image, const RegularizerSpec& reg, const Transform& A) {
  return ResponseEngine(image, reg).response(A);
}

}  // namespace equisym
