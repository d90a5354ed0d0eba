#include "spheroidal/engine.hpp"

#include <algorithm>
#include <cmath>

#include "spheroidal/kernels.hpp"

namespace spheroidal {

InconsistentOrder::InconsistentOrder(int order, const std::string& detail)
    : std::runtime_error("inconsistent order " + std::to_string(order) + ": " + detail),
      order_(order) {}

PerturbationSeries::PerturbationSeries(int m, std::vector<SeriesTerm> terms)
    : m_(m), twoE00_(Rational(static_cast<long>(m) * (m + 1))), terms_(std::move(terms)) {
  if (m < 0) throw std::invalid_argument("PerturbationSeries: m must be nonnegative");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].n != static_cast<int>(i) + 1)
      throw std::invalid_argument("PerturbationSeries: terms must be orders 1..N in sequence");
  }
}

const SeriesTerm& PerturbationSeries::term(int n) const {
  if (n < 1 || n > order()) throw std::out_of_range("PerturbationSeries::term: order out of range");
  return terms_[static_cast<std::size_t>(n) - 1];
}

Rational PerturbationSeries::twoE(int n) const {
  if (n == 0) return twoE00_;
  return term(n).twoE;
}

SeriesTerm solve_order(int n, int m, std::span<const SeriesTerm> prior) {
  if (n < 1) throw std::invalid_argument("solve_order: n must be >= 1");
  if (m < 0) throw std::invalid_argument("solve_order: m must be nonnegative");
  if (prior.size() != static_cast<std::size_t>(n) - 1)
    throw std::invalid_argument("solve_order: prior must contain orders 1..n-1");
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (prior[i].n != static_cast<int>(i) + 1)
      throw std::invalid_argument("solve_order: prior orders out of sequence");
  }

  // Right-hand side without the unknown constant 2E_0n.
  UPoly rhs;
  if (n == 1) {
    rhs = UPoly({Rational(1), Rational(-1)});  // cos^2 = 1 - u
  } else {
    for (int j = 1; j < n; ++j) rhs += mul_w(prior[j - 1].P, prior[n - j - 1].P);
  }

  const int d = rhs.degree();
  std::vector<Rational> a(static_cast<std::size_t>(std::max(d, 0)));
  Rational twoE;
  if (d <= 0) {
    twoE = -rhs.coeff(0);
  } else {
    const long mm = m;
    a[d - 1] = -rhs.coeff(d) / Rational(2 * mm + 2L * d + 1);
    for (int k = d - 1; k >= 1; --k) {
      a[k - 1] = (a[k] * Rational(2 * mm + 2L * k + 2) - rhs.coeff(k)) / Rational(2 * mm + 2L * k + 1);
    }
    twoE = a[0] * Rational(2 * mm + 2) - rhs.coeff(0);
  }

  SeriesTerm term{n, UPoly(std::move(a)), twoE};
  if (term.P.degree() > n - 1)
    throw InconsistentOrder(n, "P has degree " + std::to_string(term.P.degree()) + " > n - 1");
  if (lop_apply(term.P, m) != rhs + UPoly::constant(twoE))
    throw InconsistentOrder(n, "triangular solve does not reproduce the right-hand side");
  return term;
}

PerturbationSeries build_series(int m, int order) {
  if (m < 0) throw std::invalid_argument("build_series: m must be nonnegative");
  if (order < 1) throw std::invalid_argument("build_series: order must be >= 1");
  std::vector<SeriesTerm> terms;
  terms.reserve(static_cast<std::size_t>(order));
  for (int n = 1; n <= order; ++n) terms.push_back(solve_order(n, m, terms));
  return PerturbationSeries(m, std::move(terms));
}

namespace {

void check_order(const PerturbationSeries& series, int order) {
  if (order < 0 || order > series.order())
    throw std::out_of_range("requested order exceeds the series length");
}

}  // namespace

Rational eigenvalue(const PerturbationSeries& series, const Rational& alpha, int order) {
  check_order(series, order);
  Rational acc;
  for (int n = order; n >= 0; --n) acc = acc * alpha + series.twoE(n);
  return acc;
}

long double eigenvalue(const PerturbationSeries& series, long double alpha, int order) {
  check_order(series, order);
  long double acc = 0.0L;
  for (int n = order; n >= 0; --n) acc = acc * alpha + series.twoE(n).to_long_double();
  return acc;
}

GroundState::GroundState(const PerturbationSeries& series, long double alpha, int order)
    : series_(&series), alpha_(alpha), order_(order) {
  check_order(series, order);
  std::vector<UPoly> integrated;
  for (int n = 1; n <= order; ++n) integrated.push_back(integrate_w(series.term(n).P));
  std::size_t len = 0;
  for (const auto& j : integrated) len = std::max(len, j.coeffs().size());
  exponent_.assign(len, 0.0L);
  long double an = 1.0L;
  for (int n = 1; n <= order; ++n) {
    an *= alpha;
    const auto& c = integrated[static_cast<std::size_t>(n) - 1].coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) exponent_[k] += an * c[k].to_long_double();
  }
}

long double theta0(const GroundState& state, long double x) {
  if (!(x >= -1.0L && x <= 1.0L)) throw std::domain_error("theta0: x outside [-1, 1]");
  const int m = state.series().m();
  const long double w = (1.0L - x) * (1.0L + x);
  const long double base = std::pow(w, 0.5L * m);
  const long double a = state.alpha();
  if (state.order() <= 2) {
    long double e = 0.0L;
    const long double q = 2.0L * m + 3.0L;
    if (state.order() >= 1) e -= a * w / (4.0L * m + 6.0L);
    if (state.order() >= 2) {
      const long double r = 2.0L * m + 5.0L;
      e += a * a * w / (2.0L * q * q * q * r) - a * a * w * w / (4.0L * q * q * r);
    }
    return base * std::exp(e);
  }
  long double s = 0.0L;
  const auto& c = state.exponent_coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * w + *it;
  return base * std::exp(-s);
}

void theta0_batch(const GroundState& state, std::span<const double> x, std::span<double> out) {
  if (x.size() != out.size()) throw std::invalid_argument("theta0_batch: size mismatch");
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= -1.0 && x[i] <= 1.0)) throw std::domain_error("theta0_batch: x outside [-1, 1]");
    w[i] = (1.0 - x[i]) * (1.0 + x[i]);
  }
  std::vector<double> coeffs(state.exponent_coeffs().begin(), state.exponent_coeffs().end());
  kernels::horner(coeffs, w, out);
  const double half_m = 0.5 * state.series().m();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::pow(w[i], half_m) * std::exp(-out[i]);
}

std::vector<UPoly> theta0_poly_expansion(const PerturbationSeries& series, int order) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("theta0_poly_expansion: only orders 0..2 are available");
  check_order(series, order);
  // exp(g) with g = -sum alpha^j J_j(w): k f_k = sum_{j=1}^{k} j g_j f_{k-j}.
  std::vector<UPoly> g(static_cast<std::size_t>(order) + 1);
  for (int j = 1; j <= order; ++j) g[j] = -integrate_w(series.term(j).P);
  std::vector<UPoly> f(static_cast<std::size_t>(order) + 1);
  f[0] = UPoly::constant(Rational(1));
  for (int k = 1; k <= order; ++k) {
    UPoly acc;
    for (int j = 1; j <= k; ++j) acc += (g[j] * f[k - j]) * Rational(j);
    f[k] = acc * Rational(1, k);
  }
  return f;
}

double max_abs_w(const PerturbationSeries& series, int n) {
  const UPoly& p = series.term(n).P;
  if (p.is_zero()) return 0.0;
  // |W|^2 = u (1 - u) P(u)^2 on u in [0, 1]; scan, then golden-section refine.
  constexpr std::size_t grid = 4096;
  std::vector<double> u(grid + 1), pu(grid + 1);
  for (std::size_t i = 0; i <= grid; ++i) u[i] = static_cast<double>(i) / grid;
  const std::vector<double> c = p.to_doubles();
  kernels::horner(c, u, pu);
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double v = u[i] * (1.0 - u[i]) * pu[i] * pu[i];
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  auto g = [&p](long double x) {
    const long double v = p.eval_unchecked(x);
    return x * (1.0L - x) * v * v;
  };
  long double lo = best == 0 ? 0.0L : static_cast<long double>(best - 1) / grid;
  long double hi = best == grid ? 1.0L : static_cast<long double>(best + 1) / grid;
  const long double invphi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double x1 = hi - invphi * (hi - lo);
  long double x2 = lo + invphi * (hi - lo);
  long double f1 = g(x1), f2 = g(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-18L; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = g(x1);
    }
  }
  const long double peak = std::max({f1, f2, g(0.5L * (lo + hi))});
  return static_cast<double>(std::sqrt(std::max(peak, 0.0L)));
}

SuperpotentialValue superpotential(const PerturbationSeries& series, long double alpha, int order,
                                   long double theta) {
  check_order(series, order);
  const long double s = std::sin(theta);
  const long double c = std::cos(theta);
  const long double u = s * s;
  const long double h = series.m() + 0.5L;
  SuperpotentialValue v{-h * c / s, h / u};
  long double an = 1.0L;
  for (int n = 1; n <= order; ++n) {
    an *= alpha;
    const UPoly& p = series.term(n).P;
    const long double pv = p.eval_unchecked(u);
    const long double dp = p.derivative().eval_unchecked(u);
    v.w += an * s * c * pv;
    v.dw += an * ((c * c - s * s) * pv + 2.0L * u * c * c * dp);
  }
  return v;
}

}  // namespace spheroidal
