#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace singquad {

/// Uniform grid on U = [-1,1]^m, points y_l = l_j / N_j for l_j in [-N_j, N_j - 1], mapped to
/// physical space by x = chi y. Grid arrays are stored row-major (axis 0 slowest) in FFT-natural
/// order: storage index i_j in [0, 2N_j) holds logical index l_j = i_j for i_j < N_j and
/// l_j = i_j - 2N_j otherwise.
struct GridSpec {
  int m = 0;
  std::vector<int> N;
  std::vector<double> chi;       // m x m, row-major
  double R = 0.0;                // truncation radius, physical units
  double det_chi = 0.0;          // sqrt(det(chi^T chi))
  std::vector<double> chi_invT;  // chi^{-T}, row-major

  /// Validates and fills derived fields. R defaults to the inscribed radius of chi U.
  static GridSpec make(int m, std::vector<int> N, std::vector<double> chi, std::optional<double> R = {});
  /// chi = s Id.
  static GridSpec isotropic(int m, int n, double s, std::optional<double> R = {});

  std::vector<int> dims() const;  // 2 N_j
  std::size_t size() const;       // prod 2 N_j
  std::size_t nbar() const;       // prod N_j
  /// Same map and R, counts multiplied by factor.
  GridSpec refined(int factor) const;
  bool chi_is_diagonal() const;
  bool chi_is_scalar() const;

  /// r(y_l) = |chi y_l| for a logical multi-index.
  double r_of(const int* l) const;
  /// Logical multi-index of storage offset.
  void logical_index(std::size_t offset, int* l) const;
  /// Storage offset of a logical multi-index (entries taken modulo 2 N_j).
  std::size_t offset_of(const int* l) const;
  bool same_layout(const GridSpec& o) const;
};

/// Largest R with chi B_R inside chi U: min_j 1 / |chi^{-T} e_j|.
double inscribed_radius(int m, const std::vector<double>& chi);

struct SingularityKind {
  enum class Type { Log, Power };
  Type type = Type::Log;
  double nu = 0.0;  // r^{-nu} for Power

  static SingularityKind log() { return {Type::Log, 0.0}; }
  static SingularityKind power(double nu) { return {Type::Power, nu}; }
  bool is_log() const { return type == Type::Log; }
};

/// rho_k = pi R |chi^{-T} k|.
double rho_of_k(const GridSpec& grid, const int* k);
double rho_of_k(const GridSpec& grid, const std::vector<int>& k);

/// Exact Fourier coefficient of log(r) 1_{B_R} at mapped frequency rho.
double phi_hat_log(const GridSpec& grid, double rho);
/// Exact Fourier coefficient of r^{-nu} 1_{B_R}; requires m - nu in (0, 2].
double phi_hat_power(const GridSpec& grid, double nu, double rho);
double phi_hat(const GridSpec& grid, const SingularityKind& kind, double rho);

/// phi_hat at every k in the index set, FFT-natural order.
std::vector<double> phi_hat_table(const GridSpec& grid, const SingularityKind& kind);

/// Singular factor itself: log r or r^{-nu}.
double phi_value(const SingularityKind& kind, double r);

}  // namespace singquad
