// Power moments M^{(mu)}_1 and M^{(mu)}_2 for non-integer mu: small-argument series,
// Clenshaw-Curtis bridges between precomputed anchors, and the integration-by-parts tail.

#include "singquad/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace singquad::specfun {

namespace {

using ld = long double;

constexpr int kCcOrder = 64;
constexpr int kM1TailTerms = 13;
constexpr int kM2TailTerms = 15;

struct ClenshawCurtis {
  std::vector<ld> x, w;
  ClenshawCurtis() : x(kCcOrder + 1), w(kCcOrder + 1) {
    const int n = kCcOrder;
    const ld pi = std::numbers::pi_v<ld>;
    for (int j = 0; j <= n; ++j) {
      const ld theta = pi * j / n;
      x[j] = std::cos(theta);
      ld s = 0.0L;
      for (int k = 1; k <= n / 2; ++k) {
        const ld b = (2 * k == n) ? 1.0L : 2.0L;
        s += b / (4.0L * k * k - 1.0L) * std::cos(2.0L * k * theta);
      }
      const ld c = (j == 0 || j == n) ? 1.0L : 2.0L;
      w[j] = c / n * (1.0L - s);
    }
  }
};

const ClenshawCurtis& cc_rule() {
  static const ClenshawCurtis rule;
  return rule;
}

template <class F>
ld cc_integrate(F&& f, ld a, ld b) {
  const ClenshawCurtis& cc = cc_rule();
  const ld mid = 0.5L * (a + b), half = 0.5L * (b - a);
  ld s = 0.0L;
  for (std::size_t j = 0; j < cc.x.size(); ++j) s += cc.w[j] * f(mid + half * cc.x[j]);
  return half * s;
}

ld cos_weight(ld mu, ld t) { return std::pow(t, mu - 1.0L) * std::cos(t); }
ld j0_weight(ld mu, ld t) {
  return std::pow(t, mu - 1.0L) * boost::math::cyl_bessel_j(0, t);
}

// rho^{-mu} int_a^rho t^{mu-1} cos t dt via 2N-fold integration by parts.
ld cos_tail(ld mu, ld a, ld rho) {
  auto pq = [mu](ld t, ld& p, ld& q) {
    ld c = 1.0L, tp = 1.0L;
    const ld it2 = 1.0L / (t * t);
    p = q = 0.0L;
    for (int l = 0; l < kM1TailTerms; ++l) {
      p += c * tp;
      q += c * (mu - 1.0L - 2.0L * l) * tp;
      c *= -(2.0L * l + 1.0L - mu) * (2.0L * l + 2.0L - mu);
      tp *= it2;
    }
  };
  ld pr, qr, pa, qa;
  pq(rho, pr, qr);
  pq(a, pa, qa);
  const ld scale = std::pow(a / rho, mu);
  return std::sin(rho) * pr / rho + std::cos(rho) * qr / (rho * rho) -
         scale * (std::sin(a) * pa / a + std::cos(a) * qa / (a * a));
}

ld j0_tail(ld mu, ld a, ld rho) {
  auto pq = [mu](ld t, ld& p, ld& q) {
    ld c = 1.0L, tp = 1.0L;
    const ld it2 = 1.0L / (t * t);
    p = q = 0.0L;
    for (int l = 0; l < kM2TailTerms; ++l) {
      p += c * tp;
      q += c * (mu - 2.0L * l - 2.0L) * tp;
      const ld f = 2.0L * l + 2.0L - mu;
      c *= -f * f;
      tp *= it2;
    }
  };
  auto j = [](int n, ld t) { return boost::math::cyl_bessel_j(n, t); };
  ld pr, qr, pa, qa;
  pq(rho, pr, qr);
  pq(a, pa, qa);
  const ld scale = std::pow(a / rho, mu);
  return j(1, rho) * pr / rho + j(0, rho) * qr / (rho * rho) -
         scale * (j(1, a) * pa / a + j(0, a) * qa / (a * a));
}

void check_mu(double mu, const char* what) {
  if (!(mu > 0.0 && mu <= 2.0)) throw std::domain_error(std::string(what) + ": mu must lie in (0, 2]");
}

}  // namespace

PrecomputedAnchors::PrecomputedAnchors(double mu) : mu_(mu) {
  check_mu(mu, "PrecomputedAnchors");
  const ld m = mu;
  const ld two_pi = 2.0L * std::numbers::pi_v<ld>;
  // Unscaled running integrals: C(a) = a^mu M(a).
  ld a = two_pi;
  ld c = std::pow(a, m) * detail::m_series_ext(m, 1, a);
  cos_ext_[0] = {a, c / std::pow(a, m)};
  for (int n = 1; n < 7; ++n) {
    const ld b = two_pi * (n + 1);
    c += cc_integrate([m](ld t) { return cos_weight(m, t); }, a, b);
    a = b;
    cos_ext_[n] = {a, c / std::pow(a, m)};
  }

  a = boost::math::cyl_bessel_j_zero(1.0L, 2);
  // M_2 = 2 rho^{-mu} int_0^rho t^{mu-1} J0; keep G = int_0^rho t^{mu-1} J0.
  ld g = 0.5L * std::pow(a, m) * detail::m_series_ext(m, 2, a);
  j0_ext_[0] = {a, 2.0L * g / std::pow(a, m)};
  for (int n = 1; n < 7; ++n) {
    const ld b = boost::math::cyl_bessel_j_zero(1.0L, 2 * (n + 1));
    g += cc_integrate([m](ld t) { return j0_weight(m, t); }, a, b);
    a = b;
    j0_ext_[n] = {a, 2.0L * g / std::pow(a, m)};
  }
  for (int n = 0; n < 7; ++n) {
    cos_[n] = {static_cast<double>(cos_ext_[n].a), static_cast<double>(cos_ext_[n].value)};
    j0_[n] = {static_cast<double>(j0_ext_[n].a), static_cast<double>(j0_ext_[n].value)};
  }
}

double PrecomputedAnchors::m1(double rho) const {
  rho = std::fabs(rho);
  if (rho == 0.0) return 1.0 / mu_;
  if (rho <= cos_[0].a) return detail::m_series(mu_, 1, rho);
  if (rho >= cos_[6].a) return detail::m1_asymptotic(*this, rho);
  int n = 0;
  while (n + 1 < 7 && cos_[n + 1].a <= rho) ++n;
  return detail::m1_bridge(*this, n, rho);
}

double PrecomputedAnchors::m2(double rho) const {
  rho = std::fabs(rho);
  if (rho == 0.0) return 2.0 / mu_;
  if (rho <= j0_[0].a) return detail::m_series(mu_, 2, rho);
  if (rho >= j0_[6].a) return detail::m2_asymptotic(*this, rho);
  int n = 0;
  while (n + 1 < 7 && j0_[n + 1].a <= rho) ++n;
  return detail::m2_bridge(*this, n, rho);
}

const PrecomputedAnchors& anchors_for(double mu) {
  static std::mutex mtx;
  static std::map<double, std::unique_ptr<const PrecomputedAnchors>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(mu);
  if (it == cache.end()) it = cache.emplace(mu, std::make_unique<const PrecomputedAnchors>(mu)).first;
  return *it->second;
}

namespace detail {

double m1_bridge(const PrecomputedAnchors& anc, int n, double rho) {
  const ld mu = anc.mu();
  const auto& an = anc.cos_anchors_ext()[n];
  const ld a = an.a;
  ld c = std::pow(a, mu) * an.value;
  c += cc_integrate([mu](ld t) { return cos_weight(mu, t); }, a, rho);
  return static_cast<double>(c / std::pow(static_cast<ld>(rho), mu));
}

double m2_bridge(const PrecomputedAnchors& anc, int n, double rho) {
  const ld mu = anc.mu();
  const auto& an = anc.j0_anchors_ext()[n];
  const ld a = an.a;
  ld g = 0.5L * std::pow(a, mu) * an.value;
  g += cc_integrate([mu](ld t) { return j0_weight(mu, t); }, a, rho);
  return static_cast<double>(2.0L * g / std::pow(static_cast<ld>(rho), mu));
}

double m1_asymptotic(const PrecomputedAnchors& anc, double rho) {
  const ld mu = anc.mu();
  const auto& an = anc.cos_anchors_ext()[6];
  const ld a = an.a;
  return static_cast<double>(std::pow(a / rho, mu) * an.value + cos_tail(mu, a, rho));
}

double m2_asymptotic(const PrecomputedAnchors& anc, double rho) {
  const ld mu = anc.mu();
  const auto& an = anc.j0_anchors_ext()[6];
  const ld a = an.a;
  return static_cast<double>(std::pow(a / rho, mu) * an.value + 2.0L * j0_tail(mu, a, rho));
}

}  // namespace detail

double m1_tail(double mu, double rho) {
  if (rho < kM1TailStart) throw std::domain_error("m1_tail: rho below the tail start 14 pi");
  return static_cast<double>(cos_tail(mu, kM1TailStart, rho));
}

double m2_tail(double mu, double rho) {
  if (rho < kM2TailStart) throw std::domain_error("m2_tail: rho below the 14th zero of J1");
  return static_cast<double>(j0_tail(mu, kM2TailStart, rho));
}

EvalRegime m1_regime(double rho) {
  const double two_pi = 2.0 * std::numbers::pi;
  rho = std::fabs(rho);
  if (rho <= two_pi) return {RegimeKind::SeriesSmallArg, two_pi};
  if (rho < kM1TailStart) return {RegimeKind::PiecewiseBridge, kM1TailStart};
  return {RegimeKind::AsymptoticTail, INFINITY};
}

EvalRegime m2_regime(double rho) {
  rho = std::fabs(rho);
  if (rho <= kM2SeriesEnd) return {RegimeKind::SeriesSmallArg, kM2SeriesEnd};
  if (rho < kM2TailStart) return {RegimeKind::PiecewiseBridge, kM2TailStart};
  return {RegimeKind::AsymptoticTail, INFINITY};
}

double gen_cosine_integral(double mu, double rho) {
  if (!(mu > 0.0)) throw std::domain_error("gen_cosine_integral: mu must be positive");
  check_mu(mu, "gen_cosine_integral");
  if (rho == 0.0) return 0.0;
  if (mu == 1.0) return std::sin(rho);
  if (mu == 2.0) return rho * std::sin(rho) + std::cos(rho) - 1.0;
  return anchors_for(mu).m1(rho) * std::pow(rho, mu);
}

double j0_integral(double rho) {
  if (rho == 0.0) return 0.0;
  return 0.5 * rho * anchors_for(1.0).m2(rho);
}

}  // namespace singquad::specfun
