#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "spheroidal/legendre.hpp"

// Legendre-Galerkin reference solver for
//   [d/dx (1-x^2) d/dx + E + alpha x^2 - m^2/(1-x^2)] Theta = 0.
// The even-parity sector (l = m, m+2, ...) of the orthonormal associated
// Legendre basis makes the operator symmetric tridiagonal; the ground
// eigenvalue comes from Sturm-sequence bisection and the eigenvector from
// inverse iteration, all in long double.

namespace spheroidal::oracle {

using Real = long double;

class NotConverged : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SpectralProblem {
  int m = 0;
  Real alpha = 0;
  int K = 0;  // levels l = m, m+2, ..., m+2(K-1)
  std::vector<Real> diag;      // l(l+1) - alpha (a_{l-1}^2 + a_l^2)
  std::vector<Real> offdiag2;  // -alpha a_l a_{l+1}, coupling l <-> l+2
  /// diag - m(m+1), assembled directly so the integer part cancels exactly.
  std::vector<Real> reduced_diag;
  Real shift = 0;  // m(m+1)
};

SpectralProblem build_problem(int m, Real alpha, int K);

/// Full (both-parity) Galerkin matrix of size n x n over l = m..m+n-1,
/// row-major. Used to check that the parity sectors decouple.
std::vector<Real> build_full_matrix(int m, Real alpha, int n);

/// Number of eigenvalues of the reduced matrix strictly below x.
int sturm_count(const SpectralProblem& p, Real x);

/// Smallest eigenvalue of the sector matrix (not reduced), bisected until the
/// bracket cannot shrink further in long double.
Real smallest_eigenvalue(const SpectralProblem& p);
/// Same, relative to the shift m(m+1).
Real smallest_reduced_eigenvalue(const SpectralProblem& p);

/// Unit-norm eigenvector for the smallest eigenvalue, first entry positive.
std::vector<Real> ground_eigenvector(const SpectralProblem& p, Real reduced_eigenvalue);

/// x^T T x for the sector matrix (not reduced) and unit x.
Real rayleigh_quotient(const SpectralProblem& p, std::span<const Real> x);

struct OracleOptions {
  int k_initial = 16;
  int k_cap = 256;
  Real k_tolerance = 1e-12L;
  /// Reads SUSY_SPHEROIDAL_PRECISION (a positive factor multiplying
  /// k_tolerance) when present.
  static OracleOptions from_environment();
};

struct OracleResult {
  Real eigenvalue = 0;
  Real reduced = 0;  // eigenvalue - m(m+1)
  std::vector<Real> coefficients;  // even sector, unit norm, first positive
  int K_used = 0;
  bool converged = false;
};

/// Ground eigenpair with K doubled from k_initial until successive
/// eigenvalues differ by less than k_tolerance. `converged` is false when K
/// would exceed k_cap.
OracleResult solve(int m, Real alpha, const OracleOptions& options = {});

/// As solve(), throwing NotConverged instead of returning an unconverged result.
OracleResult ground_eigenfunction(int m, Real alpha, const OracleOptions& options = {});
Real ground_eigenvalue(int m, Real alpha, const OracleOptions& options = {});

/// Evaluator x -> sum_r c_r Lbar_{m+2r}^m(x).
LegendreExpansion evaluator(const OracleResult& result, int m);

/// Coefficients B_q (q = 0..q_max) of f in the basis Lbar_{m+q}^m, by
/// Gauss-Legendre quadrature with max(nodes, 2(m+q_max)+16) points.
/// f is called on a batch of nodes.
using BatchFunction = std::function<void(std::span<const double>, std::span<double>)>;
std::vector<double> project_legendre(const BatchFunction& f, int m, int q_max, int nodes = 0);

}  // namespace spheroidal::oracle
