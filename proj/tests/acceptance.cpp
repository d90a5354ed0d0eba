// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only
// Exit status is nonzero when any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spheroidal/engine.hpp"
#include "spheroidal/identities.hpp"
#include "spheroidal/oracle.hpp"
#include "spheroidal/validation.hpp"

using namespace spheroidal;
namespace id = spheroidal::identities;
using oracle::Real;

namespace {

struct Line {
  std::string label;
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<Line> criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string bad;
  for (int m = 0; m <= 20 && bad.empty(); ++m) {
    const Rational e(-1, 2 * m + 3);
    const auto s = build_series(m, 1);
    if (s.twoE(1) != e) bad = "engine 2E01 at m=" + std::to_string(m);
    else if (s.term(1).P != UPoly({Rational(1, 2 * m + 3)})) bad = "engine W1 at m=" + std::to_string(m);
    else if (id::select_E01(m) != e) bad = "identities 2E01 at m=" + std::to_string(m);
    else if (id::w1_resummation(m) != id::Laurent{{1, Rational(1, 2 * m + 3)}})
      bad = "identities W1 at m=" + std::to_string(m);
  }
  const double t = seconds_since(t0);
  const bool ok = bad.empty() && t < 1.0;
  return {{"1", ok, ok ? "m=0..20 exact, " + fmt("%.3f s", t) : (bad.empty() ? fmt("too slow: %.3f s", t) : bad)}};
}

std::vector<Line> criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string bad;
  for (int m = 0; m <= 20 && bad.empty(); ++m) {
    const int a = 2 * m + 3, b = 2 * m + 5;
    const Rational e(-(2 * m + 2), a * a * a * b);
    const UPoly p2({Rational(-1, a * a * a * b), Rational(1, a * a * b)});
    const auto s = build_series(m, 2);
    if (s.twoE(2) != e) bad = "engine 2E02 at m=" + std::to_string(m);
    else if (s.term(2).P != p2) bad = "engine W2 at m=" + std::to_string(m);
    else if (id::select_E02(m) != e) bad = "identities 2E02 at m=" + std::to_string(m);
    else if (id::w2_resummation(m) != id::Laurent{{1, p2.coeff(0)}, {3, p2.coeff(1)}})
      bad = "identities W2 at m=" + std::to_string(m);
  }
  const auto s0 = build_series(0, 2);
  if (bad.empty() && (s0.twoE(1) != Rational(-1, 3) || s0.twoE(2) != Rational(-2, 135))) bad = "m=0 reduction";
  const double t = seconds_since(t0);
  const bool ok = bad.empty() && t < 1.0;
  return {{"2", ok,
           ok ? "m=0..20 exact, m=0 gives -1/3 and -2/135, " + fmt("%.3f s", t)
              : (bad.empty() ? fmt("too slow: %.3f s", t) : bad)}};
}

std::vector<Line> criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string bad;
  std::size_t checks = 0;
  for (int m = 1; m <= 20 && bad.empty(); ++m) {
    for (auto f : {id::Family::Q1, id::Family::Q2, id::Family::Q3})
      for (const auto& [l, v] : id::q_vanishing(f, m)) {
        ++checks;
        if (!v.is_zero()) bad = id::family_name(f) + " m=" + std::to_string(m) + " l=" + std::to_string(l);
      }
    const auto rep = id::verify_recurrences(m);
    checks += rep.checks.size();
    if (!rep.ok()) {
      const auto v = rep.violations().front();
      bad = v.identity + " m=" + std::to_string(v.m) + " l=" + std::to_string(v.l);
    }
  }
  for (int m = 0; m <= 20 && bad.empty(); ++m) {
    const auto [i0, i2] = id::double_factorial_integrals(m);
    checks += 2;
    if (i0.by_sum != i0.closed || i2.by_sum != i2.closed) bad = "double factorial integral m=" + std::to_string(m);
  }
  const double t = seconds_since(t0);
  const bool ok = bad.empty() && t < 10.0;
  return {{"3", ok,
           ok ? std::to_string(checks) + " exact identities, " + fmt("%.3f s", t)
              : (bad.empty() ? fmt("too slow: %.3f s", t) : "violated: " + bad)}};
}

std::vector<Line> criterion4() {
  const auto s = build_series(0, 2);
  const double w1 = max_abs_w(s, 1);
  const double w2 = max_abs_w(s, 2);
  const double target2 = std::sqrt(11.0) / 2160;
  std::vector<Line> out;
  out.push_back({"4a", std::fabs(w1 - 1.0 / 6) <= 1e-12, "max|W1| = " + fmt("%.15e", w1) + ", expected 1/6"});
  out.push_back({"4b", std::fabs(w2 - target2) <= 1e-12,
                 "max|W2| = " + fmt("%.15e", w2) + ", expected sqrt(11)/2160 = " + fmt("%.15e", target2)});
  return out;
}

std::vector<Line> slope_lines(const std::string& label, bool ode, std::vector<int> orders) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Real> alphas{0.2L, 0.1L, 0.05L, 0.025L};
  std::ostringstream detail;
  bool ok = true;
  for (int m = 0; m <= 2; ++m) {
    const auto s = build_series(m, 3);
    for (int N : orders) {
      std::vector<double> xs, ys;
      for (const Real a : alphas) {
        xs.push_back(static_cast<double>(a));
        if (ode) {
          ys.push_back(static_cast<double>(validation::ode_residual_sup(s, N, a)));
        } else {
          const auto ref = oracle::ground_eigenfunction(m, a);
          ys.push_back(static_cast<double>(validation::eigenvalue_error(s, N, a, ref)));
        }
      }
      const double slope = validation::loglog_slope(xs, ys);
      const bool in = slope >= N + 0.7 && slope <= N + 1.3;
      ok = ok && in;
      detail << " m=" << m << ",N=" << N << ":" << fmt("%.3f", slope) << (in ? "" : "(out)");
    }
  }
  const double t = seconds_since(t0);
  if (!ode && t >= 30.0) ok = false;
  detail << fmt(", %.2f s", t);
  return {{label, ok, "slopes" + detail.str()}};
}

std::vector<Line> criterion5() { return slope_lines("5", false, {1, 2, 3}); }

std::vector<Line> criterion6() {
  const auto s = build_series(0, 2);
  const auto ref = oracle::ground_eigenfunction(0, 0.1L);
  const double d = validation::eigenfunction_l2_distance(s, 2, 0.1L, ref);
  std::vector<double> xs, ys;
  for (const Real a : {0.2L, 0.1L, 0.05L, 0.025L}) {
    xs.push_back(static_cast<double>(a));
    ys.push_back(validation::eigenfunction_l2_distance(s, 2, a, oracle::ground_eigenfunction(0, a)));
  }
  const double slope = validation::loglog_slope(xs, ys);
  const bool ok = d <= 1e-2 && slope >= 2.7 && slope <= 3.3;
  return {{"6", ok, "L2 distance at alpha=0.1: " + fmt("%.3e", d) + ", slope " + fmt("%.3f", slope)}};
}

std::vector<Line> criterion7() { return slope_lines("7", true, {1, 2}); }

std::vector<Line> criterion8() {
  std::string bad;
  for (int m = 0; m <= 5 && bad.empty(); ++m) {
    try {
      const auto s = build_series(m, 6);
      for (int n = 3; n <= 6; ++n)
        if (s.term(n).P.degree() != n - 1) bad = "unexpected degree at m=" + std::to_string(m);
    } catch (const InconsistentOrder& e) {
      bad = "inconsistent order " + std::to_string(e.order()) + " at m=" + std::to_string(m);
    }
  }
  const auto s0 = build_series(0, 3);
  const std::vector<Rational> known{s0.twoE(0), Rational(-1, 3), Rational(-2, 135)};
  const Real c = validation::richardson_coefficient(0, 3, known, 1e-2L, 1e-3L);
  const Real e3 = s0.twoE(3).to_long_double();
  const double rel = static_cast<double>(std::fabs(c / e3 - 1));
  const bool ok = bad.empty() && rel <= 1e-6;
  std::string detail = bad.empty() ? "orders 3..6 solve for m=0..5; " : bad + "; ";
  detail += "oracle alpha^3 coefficient " + fmt("%.12e", static_cast<double>(c)) + " vs 2E03 = " + s0.twoE(3).str() +
            ", rel " + fmt("%.2e", rel);
  return {{"8", ok, detail}};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<std::vector<Line>()>> all{criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7, criterion8};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > static_cast<int>(all.size())) {
        std::fprintf(stderr, "criterion must be 1..%zu\n", all.size());
        return 3;
      }
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 3;
    }
  }
  bool ok = true;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    std::vector<Line> lines;
    try {
      lines = all[k]();
    } catch (const std::exception& e) {
      lines = {{std::to_string(k + 1), false, std::string("exception: ") + e.what()}};
    }
    for (const auto& l : lines) {
      std::printf("criterion %s: %s  %s\n", l.label.c_str(), l.pass ? "PASS" : "FAIL", l.detail.c_str());
      ok = ok && l.pass;
    }
  }
  return ok ? 0 : 1;
}
