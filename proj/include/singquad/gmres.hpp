#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace singquad {

using cvec = std::vector<std::complex<double>>;
using LinearOperator = std::function<void(const cvec& in, cvec& out)>;

struct GmresConfig {
  double tol = 1e-12;  // on |b - A x| / |b|
  int restart = 100;
  int max_iter = 5000;
  bool throw_on_failure = true;
};

struct GmresResult {
  cvec x;
  std::vector<double> residuals;  // relative residual after each inner iteration
  int iterations = 0;
  bool converged = false;
};

class GmresError : public std::runtime_error {
 public:
  GmresError(const std::string& what, GmresResult r) : std::runtime_error(what), result(std::move(r)) {}
  GmresResult result;
};

/// Restarted GMRES, modified Gram-Schmidt with one reorthogonalization pass.
GmresResult gmres(const LinearOperator& apply, const cvec& rhs, const GmresConfig& cfg = {}, const cvec* x0 = nullptr);

}  // namespace singquad
