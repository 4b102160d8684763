#include "singquad/kernels.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace singquad;
namespace kd = singquad::kernels_detail;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

cplx reassembled(const KernelFactorization& f, double r) {
  cplx s = f.ktilde(r);
  if (f.has_power()) s += f.alpha(r) * std::pow(r, -*f.nu);
  if (f.has_log()) s += f.beta(r) * std::log(r);
  return s;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("static kernels") {
    CHECK(static_kernel(1).kernel(0.4).real() == doctest::Approx(-0.2));
    CHECK(static_kernel(2).kernel(0.4).real() == doctest::Approx(-std::log(0.4) / (2.0 * kPi)));
    CHECK(static_kernel(3).kernel(0.4).real() == doctest::Approx(1.0 / (4.0 * kPi * 0.4)));
    CHECK(static_kernel(4).kernel(0.4).real() == doctest::Approx(1.0 / (4.0 * kPi * kPi * 0.16)));
    CHECK_THROWS_AS(static_kernel(0), std::domain_error);
  }

  TEST_CASE("closed forms of the Helmholtz kernels") {
    const double k = 2.0 * kPi;
    for (double r : {1e-3, 0.05, 0.4, 2.0, 7.3}) {
      const cplx h3 = std::exp(I * (k * r)) / (4.0 * kPi * r);
      CHECK(rel(helmholtz(3, k).kernel(r), h3) < 1e-13);
      CHECK(rel(helmholtz(1, k).kernel(r), I / (2.0 * k) * std::exp(I * (k * r))) < 1e-13);
      const cplx h2 = 0.25 * I * cplx(boost::math::cyl_bessel_j(0, k * r), boost::math::cyl_neumann(0, k * r));
      CHECK(rel(helmholtz(2, k).kernel(r), h2) < 1e-13);
      const double lam = 7.0;
      CHECK(rel(helmholtz(2, I * lam).kernel(r), boost::math::cyl_bessel_k(0, lam * r) / (2.0 * kPi)) < 1e-13);
      CHECK(rel(helmholtz(3, I * lam).kernel(r), std::exp(-lam * r) / (4.0 * kPi * r)) < 1e-13);
    }
  }

  TEST_CASE("factorization reassembles the kernel") {
    for (int n = 1; n <= 6; ++n)
      for (cplx k : {cplx(2.0 * kPi), cplx(0.0, 5.0)}) {
        const auto f = helmholtz(n, k);
        f.validate();
        for (double r = 1e-3; r <= 1.0; r *= 1.7) {
          const cplx full = f.kernel(r);
          CHECK(std::abs(reassembled(f, r) - full) <= 1e-11 * std::max(1.0, std::abs(full)));
        }
        // the remainder is smooth and tends to its tabulated limit
        CHECK(std::abs(f.ktilde(1e-7) - f.ktilde0) <= 1e-8 * std::max(1.0, std::abs(f.ktilde0)));
        const double h = 1e-2;
        for (double r = 0.05; r < 1.0; r += 0.1) {
          const cplx d2 = (f.ktilde(r + h) - 2.0 * f.ktilde(r) + f.ktilde(r - h)) / (h * h);
          CHECK(std::abs(d2) < 1e3 * std::max(1.0, std::abs(f.ktilde0)));
        }
      }
  }

  TEST_CASE("odd n: smooth part is K~(0) A_n(k r)") {
    const double k = 3.0;
    for (int n : {1, 3, 5, 7}) {
      const auto f = helmholtz(n, k);
      for (double r : {0.01, 0.3, 1.1, 4.0}) {
        const cplx split = f.alpha0 * kd::a_of(4 - n, k, r) * std::pow(r, 2.0 - n) + f.ktilde0 * kd::a_of(n, k, r);
        CHECK(rel(split, kd::helmholtz_full(n, k, r)) < 1e-12);
        CHECK(rel(f.ktilde(r), f.ktilde0 * kd::a_of(n, k, r)) < 1e-15);
      }
    }
  }

  TEST_CASE("limiting values") {
    const double k = 1.7;
    CHECK(rel(kd::odd_alpha0(1), -0.5) < 1e-15);
    CHECK(rel(kd::odd_alpha0(3), 1.0 / (4.0 * kPi)) < 1e-15);
    CHECK(rel(kd::odd_alpha0(5), 1.0 / (8.0 * kPi * kPi)) < 1e-15);
    CHECK(rel(kd::odd_ktilde0(1, k), I / (2.0 * k)) < 1e-15);
    CHECK(rel(kd::odd_ktilde0(3, k), I * k / (4.0 * kPi)) < 1e-15);
    CHECK(rel(kd::odd_ktilde0(5, k), I * std::pow(k, 3) / (24.0 * kPi * kPi)) < 1e-15);
    CHECK(std::abs(kd::even_alpha0(2)) == 0.0);
    CHECK(rel(kd::even_alpha0(4), 1.0 / (4.0 * kPi * kPi)) < 1e-15);
    CHECK(rel(kd::even_beta0(2, k), -1.0 / (2.0 * kPi)) < 1e-15);
    CHECK(rel(kd::even_beta0(4, k), -k * k / (8.0 * kPi * kPi)) < 1e-15);
    CHECK(rel(kd::even_ktilde0(2, k), 0.25 * I - (std::numbers::egamma + std::log(k / 2.0)) / (2.0 * kPi)) < 1e-15);
  }

  TEST_CASE("imaginary part is regular at r = 0 for real k") {
    const double k = 2.5;
    for (int n = 2; n <= 5; ++n) {
      const double lim = std::pow(k / (2.0 * std::sqrt(kPi)), n - 2) / (4.0 * std::tgamma(n / 2.0));
      CHECK(helmholtz(n, k).kernel(1e-6).imag() == doctest::Approx(lim).epsilon(1e-9));
    }
  }

  TEST_CASE("series helpers") {
    CHECK(std::abs(kd::p_poly(0, 2.0)) == 0.0);
    CHECK(rel(kd::p_poly(1, 2.0), 1.0) < 1e-15);
    CHECK(rel(kd::p_poly(2, cplx(2.0)), 2.0) < 1e-15);  // 1! / 0! + 0! / 1! (z/2)^2
    // A_{-1}(t) = cos t + t sin t
    CHECK(rel(kd::a_of(-1, 1.3, 1.0), std::cos(1.3) + 1.3 * std::sin(1.3)) < 1e-14);
    CHECK(rel(kd::a_of(-1, cplx(0.0, 1.3), 1.0), std::cosh(1.3) - 1.3 * std::sinh(1.3)) < 1e-14);
  }

  TEST_CASE("wavenumber restrictions") {
    CHECK_THROWS_AS(helmholtz(2, cplx(1.0, 1.0)), std::domain_error);
    CHECK_THROWS_AS(helmholtz(3, cplx(-1.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(helmholtz_odd(2, 1.0), std::domain_error);
    CHECK_THROWS_AS(helmholtz_even(3, 1.0), std::domain_error);
    CHECK(helmholtz(3, 0.0).kernel(2.0).real() == doctest::Approx(1.0 / (8.0 * kPi)));
  }
}
