#include "spheroidal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "spheroidal/kernels.hpp"
#include "spheroidal/quadrature.hpp"

namespace spheroidal::oracle {

namespace {

Real x2_diag(int l, int m) {
  const Real a_prev = legendre_coupling(l - 1, m);
  const Real a = legendre_coupling(l, m);
  return a_prev * a_prev + a * a;
}

Real x2_off2(int l, int m) { return legendre_coupling(l, m) * legendre_coupling(l + 1, m); }

Real matrix_scale(const SpectralProblem& p) {
  Real s = 0;
  for (std::size_t i = 0; i < p.reduced_diag.size(); ++i) {
    Real row = std::fabs(p.reduced_diag[i]);
    if (i > 0) row += std::fabs(p.offdiag2[i - 1]);
    if (i + 1 < p.reduced_diag.size()) row += std::fabs(p.offdiag2[i]);
    s = std::max(s, row);
  }
  return s;
}

}  // namespace

SpectralProblem build_problem(int m, Real alpha, int K) {
  if (m < 0) throw std::invalid_argument("build_problem: m must be nonnegative");
  if (K < 2) throw std::invalid_argument("build_problem: K must be >= 2");
  SpectralProblem p;
  p.m = m;
  p.alpha = alpha;
  p.K = K;
  p.shift = static_cast<Real>(m) * (m + 1);
  p.diag.resize(static_cast<std::size_t>(K));
  p.reduced_diag.resize(static_cast<std::size_t>(K));
  p.offdiag2.resize(static_cast<std::size_t>(K) - 1);
  for (int r = 0; r < K; ++r) {
    const int l = m + 2 * r;
    const long long ll = static_cast<long long>(l) * (l + 1);
    const long long red = ll - static_cast<long long>(m) * (m + 1);
    const Real x2 = x2_diag(l, m);
    p.diag[r] = static_cast<Real>(ll) - alpha * x2;
    p.reduced_diag[r] = static_cast<Real>(red) - alpha * x2;
    if (r + 1 < K) p.offdiag2[r] = -alpha * x2_off2(l, m);
  }
  return p;
}

std::vector<Real> build_full_matrix(int m, Real alpha, int n) {
  if (m < 0 || n < 1) throw std::invalid_argument("build_full_matrix: bad arguments");
  std::vector<Real> a(static_cast<std::size_t>(n) * n, 0.0L);
  auto at = [&](int i, int j) -> Real& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    const int l = m + i;
    at(i, i) = static_cast<Real>(l) * (l + 1) - alpha * x2_diag(l, m);
    // <x^2> between l and l+1 vanishes by parity; only the l <-> l+2 band couples.
    if (i + 2 < n) {
      at(i, i + 2) = -alpha * x2_off2(l, m);
      at(i + 2, i) = at(i, i + 2);
    }
  }
  return a;
}

int sturm_count(const SpectralProblem& p, Real x) {
  const Real pivmin = std::numeric_limits<Real>::min() * std::max<Real>(1, matrix_scale(p));
  int count = 0;
  Real q = p.reduced_diag[0] - x;
  if (std::fabs(q) < pivmin) q = -pivmin;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < p.reduced_diag.size(); ++i) {
    const Real e = p.offdiag2[i - 1];
    q = (p.reduced_diag[i] - x) - e * e / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
  }
  return count;
}

Real smallest_reduced_eigenvalue(const SpectralProblem& p) {
  Real lo = std::numeric_limits<Real>::max();
  Real hi = std::numeric_limits<Real>::lowest();
  const std::size_t n = p.reduced_diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    Real r = 0;
    if (i > 0) r += std::fabs(p.offdiag2[i - 1]);
    if (i + 1 < n) r += std::fabs(p.offdiag2[i]);
    lo = std::min(lo, p.reduced_diag[i] - r);
    hi = std::max(hi, p.reduced_diag[i] + r);
  }
  const Real pad = 2 * std::numeric_limits<Real>::epsilon() * std::max<Real>(1, matrix_scale(p));
  lo -= pad;
  hi += pad;
  for (int it = 0; it < 1000; ++it) {
    const Real mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(p, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return lo + (hi - lo) / 2;
}

Real smallest_eigenvalue(const SpectralProblem& p) { return p.shift + smallest_reduced_eigenvalue(p); }

std::vector<Real> ground_eigenvector(const SpectralProblem& p, Real reduced_eigenvalue) {
  const std::size_t n = p.reduced_diag.size();
  const Real tiny = std::numeric_limits<Real>::epsilon() * std::max<Real>(1, matrix_scale(p));
  // LU with partial pivoting of T - lambda I (tridiagonal, gttrf layout).
  std::vector<Real> d(n), dl(n > 0 ? n - 1 : 0), du(n > 0 ? n - 1 : 0), du2(n > 1 ? n - 2 : 0, 0.0L);
  std::vector<bool> swapped(n, false);
  for (std::size_t i = 0; i < n; ++i) d[i] = p.reduced_diag[i] - reduced_eigenvalue;
  for (std::size_t i = 0; i + 1 < n; ++i) dl[i] = du[i] = p.offdiag2[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(d[i]) >= std::fabs(dl[i])) {
      if (d[i] == 0) d[i] = tiny;
      const Real fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const Real fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const Real temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  for (auto& v : d) {
    if (std::fabs(v) < tiny) v = v < 0 ? -tiny : tiny;
  }

  std::vector<Real> x(n, 1.0L);
  for (int iter = 0; iter < 4; ++iter) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        x[i + 1] -= dl[i] * x[i];
      } else {
        const Real temp = x[i];
        x[i] = x[i + 1];
        x[i + 1] = temp - dl[i] * x[i];
      }
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Real v = x[ii];
      if (ii + 1 < n) v -= du[ii] * x[ii + 1];
      if (ii + 2 < n) v -= du2[ii] * x[ii + 2];
      x[ii] = v / d[ii];
    }
    Real norm = 0;
    for (Real v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (Real& v : x) v /= norm;
  }
  if (x[0] < 0)
    for (Real& v : x) v = -v;
  return x;
}

Real rayleigh_quotient(const SpectralProblem& p, std::span<const Real> x) {
  if (x.size() != p.diag.size()) throw std::invalid_argument("rayleigh_quotient: size mismatch");
  Real num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += p.diag[i] * x[i] * x[i];
    den += x[i] * x[i];
    if (i + 1 < x.size()) num += 2 * p.offdiag2[i] * x[i] * x[i + 1];
  }
  return num / den;
}

OracleOptions OracleOptions::from_environment() {
  OracleOptions o;
  if (const char* env = std::getenv("SUSY_SPHEROIDAL_PRECISION")) {
    char* end = nullptr;
    const long double factor = std::strtold(env, &end);
    if (end == env || !(factor > 0))
      throw std::invalid_argument(std::string("SUSY_SPHEROIDAL_PRECISION must be a positive number, got ") + env);
    o.k_tolerance *= factor;
  }
  return o;
}

OracleResult solve(int m, Real alpha, const OracleOptions& options) {
  if (options.k_cap < 2) throw std::invalid_argument("solve: k_cap must be >= 2");
  int K = std::clamp(options.k_initial, 2, options.k_cap);
  SpectralProblem p = build_problem(m, alpha, K);
  Real lambda = smallest_reduced_eigenvalue(p);
  OracleResult result;
  for (;;) {
    if (2 * K > options.k_cap) {
      result.converged = false;
      break;
    }
    SpectralProblem next = build_problem(m, alpha, 2 * K);
    const Real lambda_next = smallest_reduced_eigenvalue(next);
    const bool done = std::fabs(lambda_next - lambda) < options.k_tolerance;
    K *= 2;
    p = std::move(next);
    lambda = lambda_next;
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.reduced = lambda;
  result.eigenvalue = p.shift + lambda;
  result.K_used = K;
  result.coefficients = ground_eigenvector(p, lambda);
  return result;
}

OracleResult ground_eigenfunction(int m, Real alpha, const OracleOptions& options) {
  OracleResult r = solve(m, alpha, options);
  if (!r.converged)
    throw NotConverged("oracle not converged: K cap " + std::to_string(options.k_cap) + " reached");
  return r;
}

Real ground_eigenvalue(int m, Real alpha, const OracleOptions& options) {
  return ground_eigenfunction(m, alpha, options).eigenvalue;
}

LegendreExpansion evaluator(const OracleResult& result, int m) {
  std::vector<double> coef;
  for (std::size_t r = 0; r < result.coefficients.size(); ++r) {
    if (r > 0) coef.push_back(0.0);
    coef.push_back(static_cast<double>(result.coefficients[r]));
  }
  return LegendreExpansion(m, std::move(coef));
}

std::vector<double> project_legendre(const BatchFunction& f, int m, int q_max, int nodes) {
  if (m < 0 || q_max < 0) throw std::invalid_argument("project_legendre: bad arguments");
  const int n = std::max(nodes, 2 * (m + q_max) + 16);
  const QuadratureRule rule = gauss_legendre(n);
  std::vector<double> fv(rule.nodes.size());
  f(rule.nodes, fv);

  // Basis values Lbar_{m+q}^m at every node, by upward recurrence.
  std::vector<std::vector<double>> basis(static_cast<std::size_t>(q_max) + 1, std::vector<double>(rule.nodes.size()));
  const Real norm_mm = legendre_mm_norm(m);
  for (std::size_t i = 0; i < rule.nodes_ld.size(); ++i) {
    const Real x = rule.nodes_ld[i];
    const Real s = std::sqrt((1 - x) * (1 + x));
    Real pcur = norm_mm;
    for (int k = 0; k < m; ++k) pcur *= s;
    Real prev = 0;
    basis[0][i] = static_cast<double>(pcur);
    for (int q = 0; q < q_max; ++q) {
      const int l = m + q;
      const Real next = (x * pcur - legendre_coupling(l - 1, m) * prev) / legendre_coupling(l, m);
      prev = pcur;
      pcur = next;
      basis[static_cast<std::size_t>(q) + 1][i] = static_cast<double>(pcur);
    }
  }
  std::vector<double> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(kernels::weighted_dot(rule.weights, fv, b));
  return out;
}

}  // namespace spheroidal::oracle
