#include "spheroidal/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spheroidal/kernels.hpp"
#include "spheroidal/quadrature.hpp"

namespace spheroidal::validation {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] != 0.0) || !(y[i] > 0.0)) throw std::domain_error("loglog_slope: nonpositive data");
    const double lx = std::log(std::fabs(x[i]));
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

Real series_reduced(const PerturbationSeries& series, int order, Real alpha) {
  Real acc = 0;
  for (int n = order; n >= 1; --n) acc = (acc + series.twoE(n).to_long_double()) * alpha;
  return acc;
}

}  // namespace

Real eigenvalue_error(const PerturbationSeries& series, int order, Real alpha,
                      const oracle::OracleResult& reference) {
  return std::fabs(series_reduced(series, order, alpha) - reference.reduced);
}

double eigenfunction_l2_distance(const PerturbationSeries& series, int order, Real alpha,
                                 const oracle::OracleResult& reference, int nodes) {
  const QuadratureRule rule = gauss_legendre(nodes);
  const GroundState state(series, alpha, order);
  std::vector<double> f(rule.nodes.size()), g(rule.nodes.size());
  theta0_batch(state, rule.nodes, f);
  const LegendreExpansion ev = oracle::evaluator(reference, series.m());
  ev.evaluate(rule.nodes, g);

  auto normalize = [&rule](std::vector<double>& v, double centre) {
    const double norm = std::sqrt(kernels::weighted_dot(rule.weights, v, v));
    const double scale = (centre < 0 ? -1.0 : 1.0) / norm;
    for (double& x : v) x *= scale;
  };
  normalize(f, static_cast<double>(theta0(state, 0.0L)));
  normalize(g, static_cast<double>(ev(0.0L)));
  return std::sqrt(kernels::weighted_sq_diff(rule.weights, f, g));
}

Real ode_residual_sup(const PerturbationSeries& series, int order, Real alpha, Real x_lo, Real x_hi,
                      int grid) {
  if (grid < 2 || !(x_lo < x_hi) || x_lo <= -1 || x_hi >= 1)
    throw std::invalid_argument("ode_residual_sup: need -1 < x_lo < x_hi < 1 and grid >= 2");
  const GroundState state(series, alpha, order);
  const Real E = eigenvalue(series, alpha, order);
  const int m = series.m();
  const Real h = 1e-3L;
  // Eighth-order central stencils.
  static constexpr Real d1[] = {0.0L, 4.0L / 5, -1.0L / 5, 4.0L / 105, -1.0L / 280};
  static constexpr Real d2[] = {-205.0L / 72, 8.0L / 5, -1.0L / 5, 8.0L / 315, -1.0L / 560};
  auto f = [&](Real theta) { return theta0(state, std::cos(theta)); };
  Real sup = 0;
  for (int i = 0; i < grid; ++i) {
    const Real x = x_lo + (x_hi - x_lo) * i / (grid - 1);
    const Real t = std::acos(x);
    Real first = 0, second = d2[0] * f(t);
    for (int k = 1; k <= 4; ++k) {
      const Real fp = f(t + k * h);
      const Real fm = f(t - k * h);
      first += d1[k] * (fp - fm);
      second += d2[k] * (fp + fm);
    }
    first /= h;
    second /= h * h;
    const Real s = std::sin(t);
    const Real c = std::cos(t);
    // d/dx (1-x^2) d/dx = Theta'' + cot(theta) Theta' in theta = arccos x.
    const Real r = second + c / s * first + (E + alpha * c * c - m * m / (s * s)) * f(t);
    sup = std::max(sup, std::fabs(r));
  }
  return sup;
}

Real riccati_residual_sup(const PerturbationSeries& series, int order, Real alpha, Real lo, Real hi,
                          int grid) {
  if (grid < 2 || !(lo < hi)) throw std::invalid_argument("riccati_residual_sup: bad range");
  const Real E = eigenvalue(series, alpha, order);
  const Real mm = series.m();
  Real sup = 0;
  for (int i = 0; i < grid; ++i) {
    const Real t = lo + (hi - lo) * i / (grid - 1);
    const auto w = superpotential(series, alpha, order, t);
    const Real s = std::sin(t);
    const Real c = std::cos(t);
    const Real V = -0.25L - alpha * c * c + (mm * mm - 0.25L) / (s * s);
    sup = std::max(sup, std::fabs(w.w * w.w - w.dw - (V - E)));
  }
  return sup;
}

Real richardson_coefficient(int m, int n, std::span<const Rational> known, Real alpha1, Real alpha2,
                            const oracle::OracleOptions& options) {
  if (n < 1 || known.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("richardson_coefficient: known must hold orders 0..n-1");
  if (alpha1 == alpha2 || alpha1 == 0 || alpha2 == 0)
    throw std::invalid_argument("richardson_coefficient: need two distinct nonzero alphas");
  auto scaled = [&](Real a) {
    const oracle::OracleResult r = oracle::ground_eigenfunction(m, a, options);
    // Orders >= 1 only; the order-0 term is the exact shift m(m+1).
    Real lower = 0;
    for (int k = n - 1; k >= 1; --k) lower = (lower + known[static_cast<std::size_t>(k)].to_long_double()) * a;
    return (r.reduced - lower) / std::pow(a, static_cast<Real>(n));
  };
  const Real c1 = scaled(alpha1);
  const Real c2 = scaled(alpha2);
  return (alpha1 * c2 - alpha2 * c1) / (alpha1 - alpha2);
}

bool ValidationReport::any_unconverged() const {
  return std::any_of(rows.begin(), rows.end(), [](const ValidationRow& r) { return !r.converged; });
}

ValidationReport validate(const PerturbationSeries& series, int order, std::span<const Real> alphas,
                          const oracle::OracleOptions& options) {
  ValidationReport rep;
  rep.m = series.m();
  rep.order = order;
  std::vector<double> xs, eig, l2, ode;
  for (const Real a : alphas) {
    ValidationRow row;
    row.alpha = a;
    row.e_series = eigenvalue(series, a, order);
    const oracle::OracleResult ref = oracle::solve(series.m(), a, options);
    row.converged = ref.converged;
    row.K_used = ref.K_used;
    row.e_oracle = ref.eigenvalue;
    row.abs_error = eigenvalue_error(series, order, a, ref);
    row.l2_distance = eigenfunction_l2_distance(series, order, a, ref);
    row.ode_residual = ode_residual_sup(series, order, a);
    rep.rows.push_back(row);
    if (!ref.converged) continue;
    if (a == 0) {
      if (row.abs_error > 1e-13L) {
        std::ostringstream os;
        os << "alpha = 0 row disagrees by " << static_cast<double>(row.abs_error);
        rep.failures.push_back(os.str());
      }
      continue;
    }
    xs.push_back(static_cast<double>(a));
    eig.push_back(static_cast<double>(row.abs_error));
    l2.push_back(row.l2_distance);
    ode.push_back(static_cast<double>(row.ode_residual));
  }
  auto positive = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double y) { return y > 0; });
  };
  if (xs.size() >= 2) {
    if (positive(eig)) rep.eigen_slope = loglog_slope(xs, eig);
    if (positive(l2)) rep.l2_slope = loglog_slope(xs, l2);
    if (positive(ode)) rep.ode_slope = loglog_slope(xs, ode);
    if (!rep.eigen_slope || *rep.eigen_slope < order + 0.7 || *rep.eigen_slope > order + 1.3) {
      std::ostringstream os;
      os << "eigenvalue convergence slope ";
      if (rep.eigen_slope)
        os << *rep.eigen_slope;
      else
        os << "undefined";
      os << " outside [" << order + 0.7 << ", " << order + 1.3 << "]";
      rep.failures.push_back(os.str());
    }
  }
  return rep;
}

}  // namespace spheroidal::validation
