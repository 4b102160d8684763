#pragma once

#include <array>

namespace singquad::specfun {

enum class RegimeKind { SeriesSmallArg, ClosedForm, Recurrence, PiecewiseBridge, AsymptoticTail };

struct EvalRegime {
  RegimeKind kind;
  double crossover;  // upper end of the argument range served by this regime
};

/// J_n(t) for integer n >= 0.
double bessel_j(int n, double t);

/// A_m(t) = Gamma(m/2) J_{(m-2)/2}(t) / (t/2)^{(m-2)/2}, m >= 1.
double a_fun(int m, double t);

/// L_m(rho) = int_0^1 t^{m-1} A_{m+2}(rho t) dt.
double l_fun(int m, double rho);

/// M^{(mu)}_m(rho) = int_0^1 m t^{mu-1} A_m(rho t) dt, mu in (0, 2].
double m_fun(double mu, int m, double rho);

/// Si(rho) = int_0^rho sin(t)/t dt.
double sine_integral(double rho);

/// int_0^rho J_0(t) dt.
double j0_integral(double rho);

/// Ci(mu, rho) = int_0^rho t^{mu-1} cos t dt, mu in (0, 2].
double gen_cosine_integral(double mu, double rho);

/// rho^{-mu} int_a^rho t^{mu-1} cos t dt by repeated integration by parts, a = 14 pi.
double m1_tail(double mu, double rho);
/// rho^{-mu} int_a^rho t^{mu-1} J_0(t) dt, a = 14th positive zero of J_1.
double m2_tail(double mu, double rho);

inline constexpr double kM1TailStart = 43.982297150257104;   // 14 pi
inline constexpr double kM2TailStart = 44.7593189976528217;  // j_{1,14}
inline constexpr double kM2SeriesEnd = 7.01558666981561875;  // j_{1,2}

/// Which evaluation path m_fun's non-integer base cases use at rho.
EvalRegime m1_regime(double rho);
EvalRegime m2_regime(double rho);

/// Anchor values of M^{(mu)}_1 at a_n = 2 pi n and of M^{(mu)}_2 at a_n = j_{1,2n}, n = 1..7.
class PrecomputedAnchors {
 public:
  struct Anchor {
    double a;
    double value;
  };

  explicit PrecomputedAnchors(double mu);

  double mu() const { return mu_; }
  const std::array<Anchor, 7>& cos_anchors() const { return cos_; }
  const std::array<Anchor, 7>& j0_anchors() const { return j0_; }

  /// M^{(mu)}_1(rho) and M^{(mu)}_2(rho) for any rho >= 0.
  double m1(double rho) const;
  double m2(double rho) const;

  /// Extended-precision anchor abscissa and value (the double copies above are rounded).
  struct AnchorExt {
    long double a;
    long double value;
  };
  const std::array<AnchorExt, 7>& cos_anchors_ext() const { return cos_ext_; }
  const std::array<AnchorExt, 7>& j0_anchors_ext() const { return j0_ext_; }

 private:
  double mu_;
  std::array<Anchor, 7> cos_{};
  std::array<Anchor, 7> j0_{};
  std::array<AnchorExt, 7> cos_ext_{};
  std::array<AnchorExt, 7> j0_ext_{};
};

/// Shared, lazily built anchors for mu (thread safe).
const PrecomputedAnchors& anchors_for(double mu);

namespace detail {
// Single-regime evaluators, exposed for crossover tests.
double a_series(int m, double t);
double l_series(int m, double rho);
double m_series(double mu, int m, double rho);
long double m_series_ext(long double mu, int m, long double rho);
// Bridge from anchor n (0-based) to rho, valid a bit beyond the next anchor.
double m1_bridge(const PrecomputedAnchors& anc, int n, double rho);
double m2_bridge(const PrecomputedAnchors& anc, int n, double rho);
double m1_asymptotic(const PrecomputedAnchors& anc, double rho);
double m2_asymptotic(const PrecomputedAnchors& anc, double rho);
// A_m through the half-integer Bessel route; independent of a_fun's paths.
double a_bessel(int m, double t);
double a_series_threshold(int m);
double l_series_threshold(int m);
double m_series_threshold(int m);
}  // namespace detail

}  // namespace singquad::specfun
