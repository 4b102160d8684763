#pragma once

#include "singquad/kernels.hpp"
#include "singquad/singularity.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace singquad {

/// phi_1(t / R) with phi_1(t) = exp(-e^{-2/|t|} / (1 - |t|)^2) on |t| < 1, zero elsewhere.
double cutoff(double t, double R);

/// phi~_l = sum_{k in I_N} phi^(k) e^{i pi k.y_l}, unnormalized, FFT-natural order.
/// Frequencies on the Nyquist planes are averaged with their mirror images first, so the
/// result is real for any chi (this changes nothing when chi is diagonal).
std::vector<double> regularized_phi(const GridSpec& grid, const SingularityKind& kind);

struct BuildOptions {
  int refine = 1;
  /// Half-widths (in construction-grid steps) of a centered box that holds the weights and
  /// kernel samples; everything outside is treated as zero.
  std::optional<std::vector<int>> subset_halfwidth;
  /// Grid points with r below this physical radius use the unseparated weight
  /// cut (alpha phi~ + beta phi~ + Ktilde) + (1 - cut) K; needs fact.ktilde.
  double primitive_radius = 0.0;
};

/// Minimal box half-widths (construction-grid steps) that contain B_R.
std::vector<int> min_subset_halfwidth(const GridSpec& construction_grid);

struct CorrectionWeights {
  GridSpec grid;       // construction grid
  GridSpec data_grid;  // grid of the data; grid == data_grid.refined(refine)
  int refine = 1;
  std::optional<std::vector<int>> subset_halfwidth;
  cplx center_weight = 0.0;
  std::vector<int> indices;  // m logical indices per entry, construction grid; r_l < R
  std::vector<cplx> values;  // w_l, aligned with indices; includes the origin entry

  std::size_t count() const { return values.size(); }
  /// Dense construction-grid array holding w_l at stored points and zero elsewhere.
  std::vector<cplx> dense() const;
};

/// Effective singular parts after folding r^{2q} into alpha so that m - nu lies in (0, 2].
struct FoldedPower {
  double nu = 0.0;
  int q = 0;  // alpha is multiplied by r^{2q}
};
std::optional<FoldedPower> fold_power(int m, const KernelFactorization& fact);

CorrectionWeights build_weights(const GridSpec& data_grid, const KernelFactorization& fact,
                                const BuildOptions& opts = {});

/// K(y_l) on every point of the construction grid (zero at the origin, and outside the subset
/// box when one is set), FFT-natural order.
std::vector<cplx> kernel_values(const CorrectionWeights& weights, const KernelFactorization& fact);
std::vector<cplx> kernel_values(const GridSpec& grid, const KernelFactorization& fact);

/// (|chi| / Nbar) [ sum_{l != 0} K(y_l) f(y_l) + sum_{r_l < R} w_l f(y_l) ] on the construction grid.
cplx apply_rule(const CorrectionWeights& weights, const std::vector<cplx>& kernel_values,
                const std::vector<cplx>& f_samples);

struct KernelSpectrum {
  GridSpec grid;             // data grid
  std::vector<cplx> coeffs;  // K^_k over I_N, FFT-natural order
};

/// DFT of {w_0, K(y_l) + w_l}, taken on the construction grid and truncated to the data
/// grid's frequencies.
KernelSpectrum kernel_spectrum(const CorrectionWeights& weights, const std::vector<cplx>& kernel_values);

/// build_weights + kernel_values + kernel_spectrum.
KernelSpectrum build_spectrum(const GridSpec& data_grid, const KernelFactorization& fact,
                              const BuildOptions& opts = {});

}  // namespace singquad
