#include "singquad/convolve.hpp"
#include "singquad/kernels.hpp"
#include "singquad/oracles.hpp"
#include "singquad/sources.hpp"
#include "singquad/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace singquad;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("oracles") {
  TEST_CASE("adaptive quadrature on analytic examples") {
    const auto a = oracles::adaptive_integrate_1d([](double t) { return std::log(t); }, 0.0, 1.0);
    CHECK(a.converged);
    CHECK(std::fabs(a.value + 1.0) < 1e-13);
    const auto b = oracles::adaptive_integrate_1d([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0);
    CHECK(std::fabs(b.value - 2.0) < 1e-13);
    const double c = oracles::integrate_pieces([](double t) { return std::pow(t, 0.3) * std::cos(t); }, {0.0, kPi, 2.0 * kPi});
    CHECK(std::fabs(c - specfun::gen_cosine_integral(1.3, 2.0 * kPi)) < 1e-13);
    const auto z = oracles::adaptive_integrate_1d_complex([](double t) { return std::exp(std::complex<double>(0.0, t)); }, 0.0, 2.0 * kPi);
    CHECK(std::abs(z.value) < 1e-14);
  }

  TEST_CASE("adaptive quadrature reports failure") {
    oracles::AdaptiveQuadSpec s;
    s.max_subdivisions = 3;
    const auto r = oracles::adaptive_integrate_1d([](double t) { return std::sin(200.0 * t); }, 0.0, 10.0, s);
    CHECK_FALSE(r.converged);
    CHECK_THROWS(oracles::integrate_pieces([](double t) { return std::sin(200.0 * t); }, {0.0, 10.0}, s));
  }

  TEST_CASE("special values") {
    CHECK(oracles::expint_e1(1.0) == doctest::Approx(0.219383934395520274).epsilon(1e-14));
    CHECK(oracles::bessel_i0(1.0) == doctest::Approx(1.26606587775200834).epsilon(1e-14));
    for (double x : {0.01, 3.0, 25.0, 80.0}) {
      CHECK(oracles::bessel_i0(x) == doctest::Approx(boost::math::cyl_bessel_i(0, x)).epsilon(1e-13));
      CHECK(oracles::expint_e1(x) == doctest::Approx(-boost::math::expint(-x)).epsilon(1e-13));
    }
    for (int n : {0, 1, 4})
      for (double x : {0.5, 7.0, 30.0})
        CHECK(static_cast<double>(oracles::bessel_j_trapezoid(n, x)) == doctest::Approx(boost::math::cyl_bessel_j(n, x)).epsilon(1e-13));
  }

  TEST_CASE("moment oracle against closed forms") {
    for (double rho : {0.5, 9.0, 60.0}) {
      CHECK(static_cast<double>(oracles::moment_oracle(1.0, 1, rho)) == doctest::Approx(std::sin(rho) / rho).epsilon(1e-15));
      CHECK(static_cast<double>(oracles::moment_oracle(2.0, 2, rho)) == doctest::Approx(specfun::a_fun(4, rho)).epsilon(1e-14));
    }
  }

  TEST_CASE("Gaussian potentials at the origin") {
    const double a = 0.5;
    CHECK(oracles::exact_gaussian_potential(3, 3, 0.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(oracles::exact_gaussian_potential(2, 3, 0.0) == doctest::Approx(a * std::sqrt(kPi) / 4.0).epsilon(1e-15));
    CHECK(oracles::exact_gaussian_potential(2, 2, 0.0) == doctest::Approx(0.122719376626338967).epsilon(1e-14));
    CHECK(oracles::exact_gaussian_potential(3, 4, 0.0) == doctest::Approx(a / (2.0 * std::sqrt(kPi))).epsilon(1e-13));
    CHECK_THROWS(oracles::exact_gaussian_potential(2, 5, 0.0));
    // real part: (1/2) int_0^inf cos(k r) exp(-r^2/a^2) dr
    const double k = 2.0 * kPi;
    const auto h = oracles::helmholtz_gaussian_origin(2, 3, k);
    CHECK(h.real() == doctest::Approx(a * std::sqrt(kPi) / 4.0 * std::exp(-k * k * a * a / 4.0)).epsilon(1e-13));
    CHECK(h.real() == doctest::Approx(0.0187891125040452363).epsilon(1e-13));
  }

  TEST_CASE("closed forms agree with a fine corrected convolution") {
    const int N = 32;
    for (int n : {2, 3}) {
      const GridSpec g = GridSpec::isotropic(2, N, 6.0);
      BuildOptions o;
      o.refine = 2;
      const auto u = fast_convolve(build_spectrum(g, static_kernel(n), o),
                                   SourceField::sample(g, {-3.0, -3.0}, [](const std::vector<double>& x) {
                                     return cplx(sources::gaussian(std::hypot(x[0], x[1])));
                                   }));
      // points on the positive x axis: (i, N/2) for i = N/2 .. N
      for (int i = N / 2; i <= N; i += N / 8) {
        const double r = -3.0 + 6.0 * i / N;
        const cplx v = u.samples[static_cast<std::size_t>(i * (N + 1) + N / 2)];
        CHECK(std::abs(v - oracles::exact_gaussian_potential(2, n, r)) < 1e-10);
      }
    }
  }

  TEST_CASE("brute-force DFT") {
    std::vector<cplx> c(48, 2.0);
    const auto d = oracles::brute_dft(c, {3, 4});
    CHECK(std::abs(d[0] - 2.0) < 1e-15);
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(std::abs(d[i]) < 1e-15);
    // e^{i pi k0 y} with y = l / N and k0 = -3 lands on its storage slot
    const int N = 8, k0 = -3;
    std::vector<cplx> m(16);
    for (int i = 0; i < 16; ++i) {
      const int l = i < N ? i : i - 2 * N;
      m[static_cast<std::size_t>(i)] = std::exp(cplx(0.0, kPi * k0 * l / N));
    }
    const auto dm = oracles::brute_dft(m, {N});
    for (int i = 0; i < 16; ++i) CHECK(std::abs(dm[static_cast<std::size_t>(i)] - (i == 16 + k0 ? 1.0 : 0.0)) < 1e-14);
  }
}
