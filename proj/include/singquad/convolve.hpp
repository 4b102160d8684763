#pragma once

#include "singquad/quadrature.hpp"

#include <complex>
#include <vector>

namespace singquad {

/// Samples on the data window [0,1]^m of the computational grid: indices 0..N_j per axis,
/// row-major (axis 0 slowest), (N_j + 1) points per axis.
struct SourceField {
  GridSpec grid;
  std::vector<cplx> samples;

  static SourceField zeros(const GridSpec& grid);
  /// Samples f(origin + chi y) on the window.
  template <class F>
  static SourceField sample(const GridSpec& grid, const std::vector<double>& origin, F&& f);

  std::size_t window_size() const;
  std::vector<int> window_dims() const;  // N_j + 1
  /// Largest |f| on the window boundary; data are assumed to vanish there.
  double boundary_max() const;
};

using PotentialField = SourceField;

std::size_t window_size(const GridSpec& grid);
/// Physical coordinates of window point `index` (row-major over N_j + 1 per axis).
std::vector<double> window_point(const GridSpec& grid, const std::vector<double>& origin, std::size_t index);

/// Zero-padded copy of the window samples on the full grid, FFT-natural order.
std::vector<cplx> embed(const SourceField& source);
/// Window part of a full-grid array.
std::vector<cplx> restrict_window(const GridSpec& grid, const std::vector<cplx>& full);

/// |chi| 2^m IDFT(K^ . DFT(embed f)) on the window.
PotentialField fast_convolve(const KernelSpectrum& spectrum, const SourceField& source);

/// O(M^2) evaluation of the corrected rule at every window target; needs refine == 1.
PotentialField direct_convolve(const CorrectionWeights& weights, const std::vector<cplx>& kernel_values,
                               const SourceField& source);

/// Reusable convolution operator on window vectors.
class Convolver {
 public:
  explicit Convolver(KernelSpectrum spectrum);
  const GridSpec& grid() const { return spec_.grid; }
  std::size_t window_size() const;
  /// out = K * in, both window-sized.
  void apply(const std::vector<cplx>& in, std::vector<cplx>& out) const;

 private:
  KernelSpectrum spec_;
};

template <class F>
SourceField SourceField::sample(const GridSpec& grid, const std::vector<double>& origin, F&& f) {
  SourceField s = zeros(grid);
  for (std::size_t i = 0; i < s.samples.size(); ++i) s.samples[i] = f(window_point(grid, origin, i));
  return s;
}

}  // namespace singquad
