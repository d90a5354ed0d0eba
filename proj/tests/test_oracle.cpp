#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "spheroidal/engine.hpp"
#include "spheroidal/legendre.hpp"
#include "spheroidal/oracle.hpp"
#include "spheroidal/quadrature.hpp"

using namespace spheroidal;
using namespace spheroidal::oracle;

namespace {

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

MatrixL dense(int m, Real alpha, int n) {
  const auto a = build_full_matrix(m, alpha, n);
  MatrixL M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = a[static_cast<std::size_t>(i) * n + j];
  return M;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value)
      setenv("SUSY_SPHEROIDAL_PRECISION", value, 1);
    else
      unsetenv("SUSY_SPHEROIDAL_PRECISION");
  }
  ~EnvGuard() { unsetenv("SUSY_SPHEROIDAL_PRECISION"); }
};

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("Gauss-Legendre rule") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto r = gauss_legendre(n);
    long double wsum = 0;
    for (auto w : r.weights_ld) wsum += w;
    CHECK(static_cast<double>(wsum) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      long double q = 0;
      for (int i = 0; i < n; ++i) q += r.weights_ld[i] * std::pow(r.nodes_ld[i], static_cast<long double>(k));
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(static_cast<double>(q) == doctest::Approx(exact).epsilon(1e-14).scale(1.0));
    }
  }
  CHECK_THROWS(gauss_legendre(0));
}

TEST_CASE("normalized associated Legendre functions") {
  const long double x = 0.37L, s = std::sqrt(1 - x * x);
  CHECK(static_cast<double>(normalized_legendre(0, 0, x)) == doctest::Approx(std::sqrt(0.5)));
  CHECK(static_cast<double>(normalized_legendre(2, 0, x)) ==
        doctest::Approx(static_cast<double>(std::sqrt(2.5L) * (3 * x * x - 1) / 2)));
  CHECK(static_cast<double>(normalized_legendre(1, 1, x)) == doctest::Approx(static_cast<double>(std::sqrt(0.75L) * s)));
  CHECK(static_cast<double>(normalized_legendre(3, 2, x)) ==
        doctest::Approx(static_cast<double>(std::sqrt(105.0L / 16) * x * s * s)));
  CHECK(legendre_coupling(2, 3) == 0.0L);
}

TEST_CASE("orthonormality by quadrature") {
  const auto r = gauss_legendre(80);
  for (int m : {0, 1, 4})
    for (int l1 = m; l1 < m + 8; ++l1)
      for (int l2 = m; l2 < m + 8; ++l2) {
        long double q = 0;
        for (std::size_t i = 0; i < r.nodes_ld.size(); ++i)
          q += r.weights_ld[i] * normalized_legendre(l1, m, r.nodes_ld[i]) * normalized_legendre(l2, m, r.nodes_ld[i]);
        CHECK(static_cast<double>(q) == doctest::Approx(l1 == l2 ? 1.0 : 0.0).epsilon(1e-14).scale(1.0));
      }
}

TEST_CASE("expansion batch evaluation matches scalar") {
  const LegendreExpansion e(2, {0.5, -0.25, 0.125, 0.0, 1e-3, 2e-4, -3e-5});
  std::vector<double> x, out(33);
  for (int i = 0; i <= 32; ++i) x.push_back(-1.0 + i / 16.0);
  e.evaluate(x, out);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(out[i] == doctest::Approx(static_cast<double>(e(x[i]))).epsilon(1e-13).scale(1.0));
}

TEST_CASE("parity sectors decouple") {
  const auto a = build_full_matrix(1, 0.7L, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      CHECK(a[i * 12 + j] == a[j * 12 + i]);
      if ((i + j) % 2) CHECK(a[i * 12 + j] == 0.0L);
    }
}

TEST_CASE("alpha = 0 gives m(m+1)") {
  for (int m = 0; m <= 10; ++m) {
    const auto r = solve(m, 0.0L);
    CHECK(r.converged);
    CHECK(std::fabs(r.eigenvalue - m * (m + 1)) <= 1e-15L);
    CHECK(std::fabs(r.coefficients[0] - 1) <= 1e-15L);
  }
}

TEST_CASE("ground eigenvalue agrees with a dense symmetric eigensolver") {
  for (int m : {0, 1, 3})
    for (Real alpha : {-2.0L, -0.1L, 0.1L, 1.0L, 5.0L}) {
      Eigen::SelfAdjointEigenSolver<MatrixL> es(dense(m, alpha, 60));
      const Real dense_min = es.eigenvalues()(0);
      const auto r = ground_eigenfunction(m, alpha);
      CHECK_MESSAGE(std::fabs(r.eigenvalue - dense_min) <= 1e-14L * (1 + std::fabs(dense_min)),
                    "m=" << m << " alpha=" << static_cast<double>(alpha));
    }
}

TEST_CASE("Sturm count agrees with the dense spectrum") {
  const auto p = build_problem(2, 3.0L, 20);
  MatrixL T = MatrixL::Zero(20, 20);
  for (int i = 0; i < 20; ++i) {
    T(i, i) = p.reduced_diag[i];
    if (i + 1 < 20) T(i, i + 1) = T(i + 1, i) = p.offdiag2[i];
  }
  Eigen::SelfAdjointEigenSolver<MatrixL> es(T);
  for (Real x : {-10.0L, 0.0L, 5.0L, 30.0L, 100.0L, 500.0L}) {
    int below = 0;
    for (int i = 0; i < 20; ++i) below += es.eigenvalues()(i) < x;
    CHECK(sturm_count(p, x) == below);
  }
}

TEST_CASE("eigenvector is a unit residual-free ground state") {
  const auto r = ground_eigenfunction(1, 0.4L);
  const auto p = build_problem(1, 0.4L, r.K_used);
  long double norm = 0, res = 0;
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    norm += r.coefficients[i] * r.coefficients[i];
    long double y = (p.reduced_diag[i] - r.reduced) * r.coefficients[i];
    if (i > 0) y += p.offdiag2[i - 1] * r.coefficients[i - 1];
    if (i + 1 < r.coefficients.size()) y += p.offdiag2[i] * r.coefficients[i + 1];
    res += y * y;
  }
  CHECK(std::fabs(norm - 1) <= 1e-17L);
  CHECK(std::sqrt(res) <= 1e-16L);
  CHECK(r.coefficients[0] > 0);
  for (auto c : r.coefficients) CHECK(std::isfinite(static_cast<double>(c)));
  CHECK(std::fabs(rayleigh_quotient(p, r.coefficients) - r.eigenvalue) <= 1e-16L);
}

TEST_CASE("first-order eigenvector mixing") {
  // c1/c0 -> a_0 a_1 / 6 = 1/(9 sqrt 5) at m = 0.
  const Real alpha = 1e-6L;
  const auto r = ground_eigenfunction(0, alpha);
  CHECK(static_cast<double>(r.coefficients[1] / r.coefficients[0] / alpha) ==
        doctest::Approx(1.0 / (9 * std::sqrt(5.0))).epsilon(1e-5));
}

TEST_CASE("basis adaptation and non-convergence") {
  const auto r = solve(0, 0.1L);
  CHECK(r.converged);
  CHECK(r.K_used >= 32);
  OracleOptions tight;
  tight.k_cap = 16;
  tight.k_tolerance = 0;
  const auto u = solve(0, 0.1L, tight);
  CHECK_FALSE(u.converged);
  CHECK(u.K_used == 16);
  CHECK_THROWS_AS(ground_eigenfunction(0, 0.1L, tight), NotConverged);
  CHECK_THROWS_AS(ground_eigenvalue(0, 0.1L, tight), NotConverged);
  CHECK_THROWS(build_problem(0, 0.1L, 1));
  CHECK_THROWS(build_problem(-1, 0.1L, 4));
}

TEST_CASE("precision environment variable") {
  {
    EnvGuard g(nullptr);
    CHECK(OracleOptions::from_environment().k_tolerance == 1e-12L);
  }
  {
    EnvGuard g("10");
    CHECK(OracleOptions::from_environment().k_tolerance == doctest::Approx(1e-11));
  }
  {
    EnvGuard g("nonsense");
    CHECK_THROWS_AS(OracleOptions::from_environment(), std::invalid_argument);
  }
  {
    EnvGuard g("-1");
    CHECK_THROWS_AS(OracleOptions::from_environment(), std::invalid_argument);
  }
}

TEST_CASE("Legendre projection of the closed-form ground state") {
  // Order-1 Theta_0 at m = 0 is 1 - alpha (1 - x^2)/6 + O(alpha^2); its
  // Lbar_2 coefficient is alpha sqrt(10)/45 and odd coefficients vanish.
  const auto s = build_series(0, 2);
  const Real alpha = 1e-4L;
  const GroundState g(s, alpha, 2);
  const auto B = project_legendre([&](std::span<const double> x, std::span<double> y) { theta0_batch(g, x, y); }, 0, 6);
  REQUIRE(B.size() == 7);
  CHECK(B[2] / static_cast<double>(alpha) == doctest::Approx(std::sqrt(10.0) / 45).epsilon(1e-3));
  CHECK(std::fabs(B[1]) < 1e-15);
  CHECK(std::fabs(B[3]) < 1e-15);
  // Projection reproduces a basis function.
  const auto e = project_legendre(
      [](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = static_cast<double>(normalized_legendre(5, 2, x[i]));
      },
      2, 5);
  for (int q = 0; q <= 5; ++q) CHECK(e[q] == doctest::Approx(q == 3 ? 1.0 : 0.0).epsilon(1e-13).scale(1.0));
}

TEST_CASE("oracle eigenfunction matches Theta_0 in the Legendre basis") {
  const auto s = build_series(1, 3);
  const Real alpha = 0.05L;
  const GroundState g(s, alpha, 3);
  auto B = project_legendre([&](std::span<const double> x, std::span<double> y) { theta0_batch(g, x, y); }, 1, 8);
  const auto r = ground_eigenfunction(1, alpha);
  double norm = 0;
  for (double b : B) norm += b * b;
  norm = std::sqrt(norm);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::fabs(B[2 * k] / norm - static_cast<double>(r.coefficients[k])) < 1e-7);
    CHECK(std::fabs(B[2 * k + 1]) < 1e-14);
  }
}

}
