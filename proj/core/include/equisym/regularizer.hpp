#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "equisym/filter_basis.hpp"
#include "equisym/grid.hpp"
#include "equisym/transform.hpp"

namespace equisym {

enum class RegName { tv, tv2, sobel, laplacian, prewitt };

RegName parse_reg_name(const std::string& name);  ///< throws std::domain_error
std::string to_string(RegName name);
std::vector<RegName> all_reg_names();

/// Sampled continuous Fourier transform of one regularizer kernel on a
/// uniform frequency grid (cycles per cell), used to steer the kernel by an
/// arbitrary invertible transform without resampling artifacts.
class SpectralTable {
 public:
  SpectralTable() = default;
  SpectralTable(int n, double dq, std::vector<std::complex<double>> values);

  /// Bilinear lookup at frequency q (cycles per cell); zero outside the
  /// tabulated square (the kernels are effectively band-limited well inside it).
  std::complex<double> operator()(double qx, double qy) const;

  int size() const { return n_; }
  double dq() const { return dq_; }

 private:
  int n_ = 0;
  double dq_ = 0.0;
  std::vector<std::complex<double>> values_;  // row-major, index i <-> q=(i-n/2)*dq
};

/// A classical differential regularizer realized as steerable kernels.
///
/// Each 3x3 stencil is mollified by a fixed radial C^2 blob (tap weights
/// become radial bumps at the tap offsets), projected onto the shared
/// FilterBasis by least squares under a zero-integral constraint, and
/// tabulated in the frequency domain. The filter grid is automatically
/// enlarged (p = 9, 11, 13) until every stencil's projection residual is at
/// most 5%.
///
/// Per-pixel responses combine as the sum of kernel response magnitudes
/// (|dx| + |dy| for gradient pairs, |r| for the laplacian, the sum over the
/// four second-difference responses for tv2), then average over interior
/// pixels with a border of width p excluded.
class RegularizerSpec {
 public:
  static RegularizerSpec make(RegName name);

  RegName name() const { return name_; }
  const FilterBasis& basis() const { return basis_; }
  const std::vector<FilterCoeffs>& kernels() const { return kernels_; }
  const std::vector<SpectralTable>& tables() const { return tables_; }
  /// Largest relative projection residual across this regularizer's stencils.
  double projection_residual() const { return residual_; }
  int border() const { return basis_.size(); }

 private:
  RegularizerSpec() = default;
  RegName name_ = RegName::tv;
  FilterBasis basis_;
  std::vector<FilterCoeffs> kernels_;
  std::vector<SpectralTable> tables_;
  double residual_ = 0.0;
};

/// Caches the image spectrum so that responses at many transforms reuse one
/// forward FFT. The regularizer must outlive the engine.
class ResponseEngine {
 public:
  ResponseEngine(const Image& image, const RegularizerSpec& reg);

  /// Mean over interior pixels of the combined kernel response magnitudes,
  /// with every kernel steered by A. Constant images give exactly zero for
  /// any A because the kernels carry no DC component.
  double response(const Transform& A) const;

  int side() const { return m_; }

 private:
  const RegularizerSpec& reg_;
  int m_;
  std::vector<std::complex<double>> image_spectrum_;
};

/// One-shot convenience wrapper around ResponseEngine.
double feature_response(const Image& image, const RegularizerSpec& reg, const Transform& A);

}  // namespace equisym
