#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spheroidal/engine.hpp"
#include "spheroidal/oracle.hpp"

// Cross-checks between the perturbation series and the Galerkin oracle.

namespace spheroidal::validation {

using oracle::Real;

/// Least-squares slope of log(y) against log(|x|).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// |E_series(order) - E_oracle|, formed from the shift-free parts so the
/// integer m(m+1) never enters the subtraction.
Real eigenvalue_error(const PerturbationSeries& series, int order, Real alpha,
                      const oracle::OracleResult& reference);

/// L2[-1,1] distance between Theta_0 (given order) and the oracle eigenfunction,
/// both normalized to unit norm and positive at x = 0.
double eigenfunction_l2_distance(const PerturbationSeries& series, int order, Real alpha,
                                 const oracle::OracleResult& reference, int nodes = 256);

/// sup over x in [x_lo, x_hi] of |[d/dx (1-x^2) d/dx + E + alpha x^2 - m^2/(1-x^2)] Theta_0|
/// with E and Theta_0 truncated at `order`. Derivatives are eighth-order
/// central differences taken in theta = arccos(x), where the operator reads
/// Theta'' + cot(theta) Theta' and Theta_0 is smooth.
Real ode_residual_sup(const PerturbationSeries& series, int order, Real alpha, Real x_lo = -0.9L,
                      Real x_hi = 0.9L, int grid = 181);

/// sup over theta in [lo, hi] of |W^2 - W' - (V - sum_{n<=order} 2E_0n alpha^n)|.
Real riccati_residual_sup(const PerturbationSeries& series, int order, Real alpha, Real lo = 0.2L,
                          Real hi = 3.141592653589793238L - 0.2L, int grid = 201);

/// alpha^n coefficient of the oracle ground eigenvalue: c(a) = (E(a) - sum_{k<n}
/// known[k] a^k) / a^n at two values of a, linearly extrapolated to a = 0.
/// known holds 2E_00..2E_0,n-1.
Real richardson_coefficient(int m, int n, std::span<const Rational> known, Real alpha1, Real alpha2,
                            const oracle::OracleOptions& options = {});

struct ValidationRow {
  Real alpha = 0;
  Real e_series = 0;
  Real e_oracle = 0;
  Real abs_error = 0;
  double l2_distance = 0;
  Real ode_residual = 0;
  int K_used = 0;
  bool converged = false;
};

struct ValidationReport {
  int m = 0;
  int order = 0;
  std::vector<ValidationRow> rows;
  std::optional<double> eigen_slope;
  std::optional<double> l2_slope;
  std::optional<double> ode_slope;
  std::vector<std::string> failures;
  bool any_unconverged() const;
  bool passed() const { return failures.empty(); }
};

/// Runs every alpha, fits slopes over the nonzero converged rows, and records
/// failures: alpha = 0 rows must agree to 1e-13, and with two or more nonzero
/// alphas the eigenvalue slope must lie in [order+0.7, order+1.3].
ValidationReport validate(const PerturbationSeries& series, int order, std::span<const Real> alphas,
                          const oracle::OracleOptions& options = {});

}  // namespace spheroidal::validation
