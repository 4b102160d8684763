#include "singquad/kernels.hpp"

#include "singquad/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace singquad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;

enum class WaveKind { Real, Imaginary };

WaveKind classify(cplx k) {
  if (k.imag() == 0.0 && k.real() > 0.0) return WaveKind::Real;
  if (k.real() == 0.0 && k.imag() > 0.0) return WaveKind::Imaginary;
  throw std::domain_error("helmholtz: wavenumber must be real positive or purely imaginary with Im k > 0");
}

// z^p for integer p, by repeated multiplication so that (i lambda)^p stays exactly real/imaginary.
cplx ipow(cplx z, int p) {
  cplx r = 1.0;
  const cplx b = p >= 0 ? z : 1.0 / z;
  for (int i = 0; i < std::abs(p); ++i) r *= b;
  return r;
}

// (k / (2 sqrt(pi)))^{n-2}
cplx k_factor(int n, cplx k) { return ipow(k / (2.0 * std::sqrt(kPi)), n - 2); }

// A_m(i t) = Gamma(m/2) I_{(m-2)/2}(t) / (t/2)^{(m-2)/2}, m >= 1: all series terms positive.
double a_imag_positive(int m, double t) {
  if (t == 0.0) return 1.0;
  if (t < 20.0) {
    const long double x = static_cast<long double>(t) * t / 4.0L;
    long double c = 1.0L, s = 1.0L;
    for (int l = 0; l < 400; ++l) {
      c *= x / ((l + 1) * (l + m / 2.0L));
      s += c;
      if (c < 1e-20L * s) break;
    }
    return static_cast<double>(s);
  }
  const double v = (m - 2) / 2.0;
  return std::tgamma(m / 2.0) * boost::math::cyl_bessel_i(v, t) / std::pow(t / 2.0, v);
}

double harmonic(int n) {
  double h = 0.0;
  for (int j = 1; j <= n; ++j) h += 1.0 / j;
  return h;
}

}  // namespace

namespace kernels_detail {

cplx a_of(int m, cplx k, double r) {
  const WaveKind kind = classify(k);
  const double t = std::abs(k) * r;
  if (m == 0 || (m < 0 && m % 2 == 0)) throw std::domain_error("a_of: order must be >= 1 or negative odd");
  if (m >= 1) return kind == WaveKind::Real ? specfun::a_fun(m, t) : a_imag_positive(m, t);
  // Negative odd order: run A_j = A_{j+2} -/+ t^2 A_{j+4} / (j (j+2)) down from A_1, A_3.
  const double sgn = kind == WaveKind::Real ? -1.0 : 1.0;
  double hi = kind == WaveKind::Real ? specfun::a_fun(3, t) : a_imag_positive(3, t);
  double lo = kind == WaveKind::Real ? specfun::a_fun(1, t) : a_imag_positive(1, t);
  for (int j = -1; j >= m; j -= 2) {
    const double next = lo + sgn * t * t * hi / (j * (j + 2.0));
    hi = lo;
    lo = next;
  }
  return lo;
}

cplx p_poly(int nu, cplx z) {
  if (nu < 0) throw std::domain_error("p_poly: negative order");
  const cplx w = (z / 2.0) * (z / 2.0);
  cplx s = 0.0, p = 1.0;
  double fact_l = 1.0;
  for (int l = 0; l < nu; ++l) {
    s += std::tgamma(nu - l) / fact_l * p;  // (nu-1-l)! / l!
    p *= w;
    fact_l *= (l + 1);
  }
  return s;
}

cplx q_series(int nu, cplx z) {
  using lcplx = std::complex<long double>;
  const lcplx w = lcplx(z.real() / 2.0L, z.imag() / 2.0L);
  const lcplx x = -w * w;
  const long double g2 = 2.0L * std::numbers::egamma_v<long double>;
  long double hl = 0.0L, hnl = 0.0L;
  for (int j = 1; j <= nu; ++j) hnl += 1.0L / j;
  lcplx c = 1.0L;  // x^l nu! / (l! (nu+l)!)
  lcplx s = (hl + hnl - g2) * c;
  for (int l = 0; l < 200; ++l) {
    c *= x / static_cast<long double>((l + 1) * (nu + l + 1));
    hl += 1.0L / (l + 1);
    hnl += 1.0L / (nu + l + 1);
    const lcplx term = (hl + hnl - g2) * c;
    s += term;
    if (std::abs(term) < 1e-20L * std::abs(s) && static_cast<long double>(l) > std::abs(w)) break;
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

cplx helmholtz_full(int n, cplx k, double r) {
  if (n < 1) throw std::domain_error("helmholtz_full: n must be >= 1");
  const double v = (n - 2) / 2.0;
  if (classify(k) == WaveKind::Real) {
    const double kr = k.real();
    const double z = kr * r;
    const double scale = std::pow(z / 2.0, v);
    const double j = boost::math::cyl_bessel_j(v, z);
    const double y = boost::math::cyl_neumann(v, z);
    return 0.25 * std::pow(kr / (2.0 * std::sqrt(kPi)), n - 2) * cplx(-y / scale, j / scale);
  }
  const double lam = k.imag();
  return std::pow(lam / (2.0 * kPi * r), v) * boost::math::cyl_bessel_k(std::fabs(v), lam * r) / (2.0 * kPi);
}

cplx odd_alpha0(int n) {
  const int sign = ((n + 1) / 2) % 2 == 0 ? 1 : -1;  // (-1)^{ceil(n/2)}
  return sign / (4.0 * std::tgamma(2.0 - n / 2.0) * std::pow(std::sqrt(kPi), n - 2));
}

cplx odd_ktilde0(int n, cplx k) { return cplx(0.0, 1.0) / (4.0 * std::tgamma(n / 2.0)) * k_factor(n, k); }

cplx even_alpha0(int n) {
  if (n == 2) return 0.0;
  return std::tgamma((n - 4) / 2.0 + 1.0) / (4.0 * std::pow(kPi, n / 2.0));
}

cplx even_beta0(int n, cplx k) { return -k_factor(n, k) / (2.0 * kPi * std::tgamma(n / 2.0)); }

cplx even_ktilde0(int n, cplx k) {
  const int v = (n - 2) / 2;
  const cplx brace = (harmonic(v) - 2.0 * kEuler) / kPi - 2.0 / kPi * std::log(k / 2.0) + cplx(0.0, 1.0);
  return k_factor(n, k) / (4.0 * std::tgamma(n / 2.0)) * brace;
}

}  // namespace kernels_detail

void KernelFactorization::validate() const {
  if (!kernel) throw std::invalid_argument("KernelFactorization: full kernel callable missing");
  if (has_power() && !alpha) throw std::invalid_argument("KernelFactorization: power part without alpha");
  auto finite = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  if (!finite(alpha0) || !finite(beta0) || !finite(ktilde0))
    throw std::invalid_argument("KernelFactorization: non-finite limiting value");
}

KernelFactorization static_kernel(int n) {
  if (n < 1) throw std::domain_error("static_kernel: n must be >= 1");
  KernelFactorization f;
  f.n = n;
  f.k = 0.0;
  f.ktilde0 = 0.0;
  f.ktilde = [](double) { return cplx(0.0); };
  if (n == 1) {
    f.nu = -1.0;
    f.alpha0 = -0.5;
    f.alpha = [](double) { return cplx(-0.5); };
    f.kernel = [](double r) { return cplx(-0.5 * r); };
  } else if (n == 2) {
    const double b = -1.0 / (2.0 * kPi);
    f.beta0 = b;
    f.beta = [b](double) { return cplx(b); };
    f.kernel = [b](double r) { return cplx(b * std::log(r)); };
  } else {
    const double a = std::tgamma(n / 2.0 - 1.0) / (4.0 * std::pow(kPi, n / 2.0));
    const double nu = n - 2.0;
    f.nu = nu;
    f.alpha0 = a;
    f.alpha = [a](double) { return cplx(a); };
    f.kernel = [a, nu](double r) { return cplx(a * std::pow(r, -nu)); };
  }
  return f;
}

KernelFactorization helmholtz_odd(int n, cplx k) {
  if (n < 1 || n % 2 == 0) throw std::domain_error("helmholtz_odd: n must be odd and >= 1");
  if (k == 0.0) return static_kernel(n);
  classify(k);
  KernelFactorization f;
  f.n = n;
  f.k = k;
  f.nu = n - 2.0;
  const cplx a0 = kernels_detail::odd_alpha0(n);
  const cplx t0 = kernels_detail::odd_ktilde0(n, k);
  f.alpha0 = a0;
  f.ktilde0 = t0;
  f.alpha = [a0, n, k](double r) { return a0 * kernels_detail::a_of(4 - n, k, r); };
  f.ktilde = [t0, n, k](double r) { return t0 * kernels_detail::a_of(n, k, r); };
  if (classify(k) == WaveKind::Imaginary) {
    // the split form cancels cosh against sinh; exact but useless once lambda r is large
    f.kernel = [n, k](double r) { return kernels_detail::helmholtz_full(n, k, r); };
  } else {
    f.kernel = [a0, t0, n, k](double r) {
      return a0 * kernels_detail::a_of(4 - n, k, r) * std::pow(r, 2.0 - n) + t0 * kernels_detail::a_of(n, k, r);
    };
  }
  return f;
}

KernelFactorization helmholtz_even(int n, cplx k) {
  if (n < 2 || n % 2 == 1) throw std::domain_error("helmholtz_even: n must be even and >= 2");
  if (k == 0.0) return static_kernel(n);
  classify(k);
  KernelFactorization f;
  f.n = n;
  f.k = k;
  const int v = (n - 2) / 2;
  const double pn = 4.0 * std::pow(kPi, n / 2.0);
  if (n >= 4) {
    f.nu = n - 2.0;
    f.alpha0 = kernels_detail::even_alpha0(n);
    f.alpha = [v, k, pn](double r) { return kernels_detail::p_poly(v, k * r) / pn; };
  }
  const cplx b0 = kernels_detail::even_beta0(n, k);
  f.beta0 = b0;
  f.beta = [b0, n, k](double r) { return b0 * kernels_detail::a_of(n, k, r); };
  f.ktilde0 = kernels_detail::even_ktilde0(n, k);
  f.kernel = [n, k](double r) { return kernels_detail::helmholtz_full(n, k, r); };
  const cplx pref = k_factor(n, k) / (4.0 * std::tgamma(n / 2.0));
  const cplx logk = std::log(k / 2.0);
  KernelFactorization base = f;
  f.ktilde = [pref, logk, v, n, k, base](double r) {
    if (std::abs(k) * r < 8.0) {
      const cplx an = kernels_detail::a_of(n, k, r);
      return pref * (kernels_detail::q_series(v, k * r) / kPi - 2.0 / kPi * logk * an + cplx(0.0, 1.0) * an);
    }
    cplx s = base.kernel(r) - base.beta(r) * std::log(r);
    if (base.has_power()) s -= base.alpha(r) * std::pow(r, -*base.nu);
    return s;
  };
  return f;
}

KernelFactorization helmholtz(int n, cplx k) {
  if (k == 0.0) return static_kernel(n);
  return n % 2 == 1 ? helmholtz_odd(n, k) : helmholtz_even(n, k);
}

}  // namespace singquad
