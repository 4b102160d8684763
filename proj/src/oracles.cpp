#include "singquad/oracles.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace singquad::oracles {

QuadResult<double> adaptive_integrate_1d(const std::function<double(double)>& f, double a, double b,
                                         const AdaptiveQuadSpec& spec) {
  return adaptive_integrate<double>(f, a, b, spec);
}

QuadResult<std::complex<double>> adaptive_integrate_1d_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const AdaptiveQuadSpec& spec) {
  return adaptive_integrate<double>(f, a, b, spec);
}

double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks,
                        const AdaptiveQuadSpec& spec) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    auto r = adaptive_integrate<double>(f, breaks[i], breaks[i + 1], spec);
    if (!r.converged) throw std::runtime_error("integrate_pieces: adaptive quadrature did not converge");
    s += r.value;
  }
  return s;
}

std::complex<double> integrate_pieces_complex(const std::function<std::complex<double>(double)>& f,
                                              const std::vector<double>& breaks,
                                              const AdaptiveQuadSpec& spec) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    auto r = adaptive_integrate<double>(f, breaks[i], breaks[i + 1], spec);
    if (!r.converged) throw std::runtime_error("integrate_pieces_complex: adaptive quadrature did not converge");
    s += r.value;
  }
  return s;
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("expint_e1: x must be positive");
  return boost::math::expint(1, x);
}

double bessel_i0(double x) { return boost::math::cyl_bessel_i(0, x); }

long double bessel_j_trapezoid(int n, long double x) {
  // Periodic analytic integrand: the trapezoidal rule converges geometrically once the
  // point count exceeds |x| by a margin.
  const int M = static_cast<int>(std::fabs(x)) + 64;
  const long double pi = std::numbers::pi_v<long double>;
  long double s = 0.0L;
  // integrand on [0, 2 pi) is cos(n tau - x sin tau); average over a full period
  for (int j = 0; j < 2 * M; ++j) {
    const long double tau = pi * j / M;
    s += std::cos(n * tau - x * std::sin(tau));
  }
  return s / (2 * M);
}

double exact_gaussian_potential(int m, int n, double r, double a) {
  const double rho = std::fabs(r) / a;
  const double x = rho * rho;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  if (m == 2 && n == 2) {
    // log(exp(-E1(x))/x) = -E1(x) - log x = gamma - Ein(x)
    double g;
    if (x < 2.0) {
      double term = 1.0, ein = 0.0;
      for (int k = 1; k < 80; ++k) {
        term *= -x / k;                      // (-x)^k / k!
        const double add = -term / k;        // (-1)^{k+1} x^k / (k k!)
        ein += add;
        if (std::fabs(add) < 1e-18 * std::fabs(ein)) break;
      }
      g = std::numbers::egamma - ein;
    } else {
      g = -expint_e1(x) - std::log(x);
    }
    return a * a / 4.0 * g - a * a / 2.0 * std::log(a);
  }
  if (m == 2 && n == 3) {
    return a * sqrt_pi / 4.0 * std::exp(-x / 2.0) * bessel_i0(x / 2.0);
  }
  if (m == 3 && n == 3) {
    const double ratio = (rho == 0.0) ? 2.0 / sqrt_pi : std::erf(rho) / rho;
    return a * a * sqrt_pi / 4.0 * ratio;
  }
  if (m == 3 && n == 4) {
    auto g = [x](double t) {
      const double z = x * (1.0 - t * t) / 2.0;
      return std::exp(-x / 2.0 - x * t * t / 2.0) * bessel_i0(z);
    };
    AdaptiveQuadSpec spec;
    spec.rel_tol = 1e-15;
    auto res = adaptive_integrate<double>(g, 0.0, 1.0, spec);
    if (!res.converged) throw std::runtime_error("exact_gaussian_potential: inner integral failed");
    return a / (2.0 * sqrt_pi) * res.value;
  }
  throw std::invalid_argument("exact_gaussian_potential: unsupported (m, n) = (" + std::to_string(m) +
                              ", " + std::to_string(n) + ")");
}

std::complex<double> helmholtz_gaussian_origin(int m, int n, double k, double a) {
  if (m < 1 || m > 3 || n < 1) throw std::invalid_argument("helmholtz_gaussian_origin: bad (m, n)");
  if (n < m) throw std::invalid_argument("helmholtz_gaussian_origin: kernel not integrable");
  // Full kernel (i/4) (k/(2 pi r))^nu H^(1)_nu(k r), nu = (n-2)/2.
  const double nu = (n - 2) / 2.0;
  auto kernel = [=](double r) {
    const double z = k * r;
    const double j = boost::math::cyl_bessel_j(nu, z);
    const double y = boost::math::cyl_neumann(nu, z);
    const std::complex<double> h(j, y);
    return std::complex<double>(0.0, 0.25) * std::pow(k / (2.0 * std::numbers::pi * r), nu) * h;
  };
  const double area = 2.0 * std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0);
  auto integrand = [&](double r) {
    return area * kernel(r) * std::exp(-(r / a) * (r / a)) * std::pow(r, m - 1);
  };
  AdaptiveQuadSpec spec;
  spec.rel_tol = 1e-15;
  std::vector<double> breaks;
  for (double b = 0.0; b <= 12.0 * a + 1e-12; b += 0.25 * a) breaks.push_back(b);
  return integrate_pieces_complex(integrand, breaks, spec);
}

long double moment_oracle(double mu, int m, double rho) {
  if (!(mu > 0.0 && mu <= 2.0)) throw std::domain_error("moment_oracle: mu must lie in (0, 2]");
  if (m != 1 && m != 2) throw std::domain_error("moment_oracle: m must be 1 or 2");
  const long double lmu = mu, lrho = rho;
  auto g = [&](long double s) -> long double {
    const long double t = std::pow(s, 1.0L / lmu);
    return m == 1 ? std::cos(lrho * t) : boost::math::cyl_bessel_j(0, lrho * t);
  };
  // split at roughly one oscillation per piece in t
  const int pieces = std::max(1, static_cast<int>(std::ceil(rho / 3.0)));
  AdaptiveQuadSpec spec;
  spec.rel_tol = 1e-18;
  spec.abs_tol = 5e-19;  // |g| <= 1 on pieces of length <= 1
  long double sum = 0.0L;
  for (int p = 0; p < pieces; ++p) {
    const long double a = std::pow(static_cast<long double>(p) / pieces, lmu);
    const long double b = std::pow(static_cast<long double>(p + 1) / pieces, lmu);
    const auto r = adaptive_integrate<long double>(g, a, b, spec);
    sum += r.value;
  }
  return m / lmu * sum;
}

std::vector<std::complex<double>> brute_dft(const std::vector<std::complex<double>>& samples,
                                            const std::vector<int>& N) {
  const int m = static_cast<int>(N.size());
  std::size_t total = 1;
  for (int nj : N) total *= 2 * static_cast<std::size_t>(nj);
  if (samples.size() != total) throw std::invalid_argument("brute_dft: size mismatch");
  std::vector<std::complex<double>> out(total);
  std::vector<int> kidx(m), lidx(m);
  const double pi = std::numbers::pi;
  for (std::size_t kk = 0; kk < total; ++kk) {
    std::size_t rem = kk;
    for (int d = m - 1; d >= 0; --d) {
      const int i = static_cast<int>(rem % (2 * N[d]));
      rem /= 2 * N[d];
      kidx[d] = i < N[d] ? i : i - 2 * N[d];
    }
    std::complex<long double> acc = 0.0L;
    for (std::size_t ll = 0; ll < total; ++ll) {
      std::size_t r2 = ll;
      long double phase = 0.0L;
      for (int d = m - 1; d >= 0; --d) {
        const int i = static_cast<int>(r2 % (2 * N[d]));
        r2 /= 2 * N[d];
        lidx[d] = i < N[d] ? i : i - 2 * N[d];
        // reduce k*l modulo 2N before scaling to keep the phase exact
        long long kl = static_cast<long long>(kidx[d]) * lidx[d];
        kl %= 2LL * N[d];
        phase += static_cast<long double>(kl) / N[d];
      }
      const long double ang = -pi * phase;
      acc += std::complex<long double>(std::cos(ang), std::sin(ang)) *
             std::complex<long double>(samples[ll].real(), samples[ll].imag());
    }
    out[kk] = std::complex<double>(static_cast<double>(acc.real() / total),
                                   static_cast<double>(acc.imag() / total));
  }
  return out;
}

}  // namespace singquad::oracles
