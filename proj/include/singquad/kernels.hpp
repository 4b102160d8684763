#pragma once

#include <complex>
#include <functional>
#include <optional>

namespace singquad {

using cplx = std::complex<double>;
using RadialFn = std::function<cplx(double)>;

/// K(r) = alpha(r) r^{-nu} + beta(r) log r + Ktilde(r), with alpha, beta, Ktilde smooth.
/// Either singular part may be absent.
struct KernelFactorization {
  int n = 0;                 // dimension of the space the kernel lives in
  cplx k = 0.0;              // wavenumber, 0 for the static kernels
  std::optional<double> nu;  // power exponent; absent when there is no power part
  RadialFn alpha;            // smooth coefficient of r^{-nu}
  cplx alpha0 = 0.0;
  RadialFn beta;             // smooth coefficient of log r
  cplx beta0 = 0.0;
  cplx ktilde0 = 0.0;        // limit of the smooth remainder at r = 0
  RadialFn kernel;           // full kernel, r > 0
  RadialFn ktilde;           // smooth remainder, optional

  bool has_power() const { return nu.has_value(); }
  bool has_log() const { return static_cast<bool>(beta); }
  /// Throws std::invalid_argument when required members are missing or non-finite.
  void validate() const;
};

/// K^0_n: -r/2 (n = 1), -log(r)/(2 pi) (n = 2), Gamma(n/2-1)/(4 pi^{n/2}) r^{2-n} (n >= 3).
KernelFactorization static_kernel(int n);

/// Helmholtz kernel K^k_n for odd n; k real or purely imaginary with Im k > 0.
KernelFactorization helmholtz_odd(int n, cplx k);
/// Helmholtz kernel K^k_n for even n >= 2; same wavenumber restrictions.
KernelFactorization helmholtz_even(int n, cplx k);
/// Dispatches on parity; k = 0 gives static_kernel.
KernelFactorization helmholtz(int n, cplx k);

namespace kernels_detail {
/// A_m(k r) for real or purely imaginary k; m >= 1 or m odd and <= -1.
cplx a_of(int m, cplx k, double r);
/// P_nu(z) for z = k r, nu >= 0 integer (finite sum; P_0 = 0).
cplx p_poly(int nu, cplx z);
/// Q_nu(z) by its power series; accurate for moderate |z|.
cplx q_series(int nu, cplx z);
/// Helmholtz kernel from Bessel functions of the first and second kind (validation path).
cplx helmholtz_full(int n, cplx k, double r);
/// alpha^k_n(0) and Ktilde^k_n(0) recurrences, returned as the value for n.
cplx odd_alpha0(int n);
cplx odd_ktilde0(int n, cplx k);
cplx even_alpha0(int n);
cplx even_beta0(int n, cplx k);
cplx even_ktilde0(int n, cplx k);
}  // namespace kernels_detail

}  // namespace singquad
