#include "singquad/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace singquad::specfun {

namespace {

using ld = long double;

constexpr int kMaxSeriesTerms = 400;
constexpr ld kSeriesRelTol = 1e-19L;

// Sum of c_l / d_l where c_0 = 1, c_{l+1} = -c_l * x / ((l+1)(l+q)).
// The divisor d_l = p + 2l; p = 0 means no divisor.
ld bessel_like_series(ld x, ld q, ld p) {
  ld c = 1.0L;
  ld sum = (p == 0.0L) ? 1.0L : 1.0L / p;
  for (int l = 0; l < kMaxSeriesTerms; ++l) {
    c *= -x / ((l + 1) * (l + q));
    const ld term = (p == 0.0L) ? c : c / (p + 2.0L * (l + 1));
    sum += term;
    if (l + 1 > x && std::fabs(term) <= kSeriesRelTol * std::fabs(sum)) return sum;
    if (std::fabs(term) < 1e-40L) return sum;
  }
  return sum;
}

void require_order(int m, const char* what) {
  if (m < 1) throw std::domain_error(std::string(what) + ": dimension m must be >= 1");
}

}  // namespace

double bessel_j(int n, double t) {
  if (n < 0) throw std::domain_error("bessel_j: negative order");
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  const double v = boost::math::cyl_bessel_j(n, std::fabs(t));
  return (t < 0.0 && (n % 2 == 1)) ? -v : v;
}

namespace detail {

double a_series(int m, double t) {
  const ld x = static_cast<ld>(t) * t / 4.0L;
  return static_cast<double>(bessel_like_series(x, m / 2.0L, 0.0L));
}

double l_series(int m, double rho) {
  const ld x = static_cast<ld>(rho) * rho / 4.0L;
  return static_cast<double>(bessel_like_series(x, m / 2.0L + 1.0L, m));
}

double m_series(double mu, int m, double rho) {
  const ld x = static_cast<ld>(rho) * rho / 4.0L;
  return static_cast<double>(m * bessel_like_series(x, m / 2.0L, mu));
}

long double m_series_ext(long double mu, int m, long double rho) {
  return m * bessel_like_series(rho * rho / 4.0L, m / 2.0L, mu);
}

double a_bessel(int m, double t) {
  require_order(m, "a_bessel");
  if (t == 0.0) return 1.0;
  t = std::fabs(t);
  const double v = (m - 2) / 2.0;
  return std::tgamma(m / 2.0) * boost::math::cyl_bessel_j(v, t) / std::pow(t / 2.0, v);
}

double a_series_threshold(int m) { return std::max(2.0, 0.5 * m); }
double l_series_threshold(int m) { return m == 1 ? 0.0 : m + 2.0; }
double m_series_threshold(int m) { return 2.0 + 0.5 * m; }

}  // namespace detail

double a_fun(int m, double t) {
  require_order(m, "a_fun");
  t = std::fabs(t);
  if (t == 0.0) return 1.0;
  switch (m) {
    case 1: return std::cos(t);
    case 2: return bessel_j(0, t);
    case 3: return std::sin(t) / t;
    case 4: return 2.0 * bessel_j(1, t) / t;
    default: break;
  }
  if (t < detail::a_series_threshold(m)) return detail::a_series(m, t);
  int j = (m % 2 == 1) ? 1 : 2;
  double p = a_fun(j, t);
  double q = a_fun(j + 2, t);
  const double inv_t2 = 1.0 / (t * t);
  while (j + 2 < m) {
    const double r = j * (j + 2.0) * inv_t2 * (q - p);
    p = q;
    q = r;
    j += 2;
  }
  return q;
}

double l_fun(int m, double rho) {
  require_order(m, "l_fun");
  rho = std::fabs(rho);
  if (rho == 0.0) return 1.0 / m;
  if (rho < detail::l_series_threshold(m)) return detail::l_series(m, rho);
  int j;
  double l;
  if (m % 2 == 1) {
    j = 1;
    l = sine_integral(rho) / rho;
  } else {
    j = 2;
    l = 2.0 * (1.0 - bessel_j(0, rho)) / (rho * rho);
  }
  const double inv_r2 = 1.0 / (rho * rho);
  while (j < m) {
    l = (j + 2.0) * inv_r2 * (j * l - a_fun(j + 2, rho));
    j += 2;
  }
  return l;
}

double m_fun(double mu, int m, double rho) {
  if (!(mu > 0.0 && mu <= 2.0)) throw std::domain_error("m_fun: mu must lie in (0, 2]");
  require_order(m, "m_fun");
  rho = std::fabs(rho);
  if (rho == 0.0) return m / mu;

  if (mu == 2.0) {
    if (m == 2) return a_fun(4, rho);
    if (rho < detail::m_series_threshold(m)) return detail::m_series(mu, m, rho);
    if (m == 1) {
      const double s = std::sin(0.5 * rho);
      return std::sin(rho) / rho - 2.0 * s * s / (rho * rho);
    }
    double one_minus_a;
    if (m == 3) {
      const double s = std::sin(0.5 * rho);
      one_minus_a = 2.0 * s * s;
    } else {
      one_minus_a = 1.0 - a_fun(m - 2, rho);
    }
    return m * (m - 2.0) / (rho * rho) * one_minus_a;
  }

  if (mu == 1.0) {
    if (m == 1) return a_fun(3, rho);
    const PrecomputedAnchors& anc = anchors_for(1.0);
    if (m == 2) return anc.m2(rho);
    if (m == 3) return 3.0 * sine_integral(rho) / rho;
    int j = (m % 2 == 1) ? 3 : 2;
    double v = (j == 3) ? 3.0 * sine_integral(rho) / rho : anc.m2(rho);
    while (j < m) {
      v = (j + 2.0) / (j - 1.0) * (v - a_fun(j + 2, rho));
      j += 2;
    }
    return v;
  }

  const PrecomputedAnchors& anc = anchors_for(mu);
  if (m == 1) return anc.m1(rho);
  if (m == 2) return anc.m2(rho);
  if (rho < detail::m_series_threshold(m)) return detail::m_series(mu, m, rho);
  int j = (m % 2 == 1) ? 1 : 2;
  double v = (j == 1) ? anc.m1(rho) : anc.m2(rho);
  while (j < m) {
    if (j == mu) throw std::logic_error("m_fun: recurrence reached m == mu");
    // (mu - j) M_{j+2} = (j+2) (A_{j+2} - M_j)
    v = (j + 2.0) / (j - mu) * (v - a_fun(j + 2, rho));
    j += 2;
  }
  return v;
}

double sine_integral(double rho) {
  if (rho == 0.0) return 0.0;
  const double sign = rho < 0.0 ? -1.0 : 1.0;
  const ld t = std::fabs(static_cast<ld>(rho));
  if (t <= 4.0L) {
    // sum (-1)^k t^{2k+1} / ((2k+1)(2k+1)!)
    ld p = t;  // t^{2k+1}/(2k+1)!
    ld sum = t;
    for (int k = 1; k < 60; ++k) {
      p *= -t * t / ((2.0L * k) * (2.0L * k + 1.0L));
      const ld term = p / (2.0L * k + 1.0L);
      sum += term;
      if (std::fabs(term) < kSeriesRelTol * std::fabs(sum)) break;
    }
    return sign * static_cast<double>(sum);
  }
  // Continued fraction for E1(i t); Si = pi/2 + Im(e^{-it} h).
  using cld = std::complex<ld>;
  const ld tiny = 1e-4000L;
  cld b(1.0L, t);
  cld c(1.0L / tiny, 0.0L);
  cld d = 1.0L / b;
  cld h = d;
  for (int i = 2; i < 10000; ++i) {
    const ld a = -static_cast<ld>(i - 1) * (i - 1);
    b += 2.0L;
    d = 1.0L / (a * d + b);
    c = b + a / c;
    const cld del = c * d;
    h *= del;
    if (std::fabs(del.real() - 1.0L) + std::fabs(del.imag()) < 1e-20L) break;
  }
  h *= cld(std::cos(t), -std::sin(t));
  const ld si = std::numbers::pi_v<ld> / 2.0L + h.imag();
  return sign * static_cast<double>(si);
}

}  // namespace singquad::specfun
