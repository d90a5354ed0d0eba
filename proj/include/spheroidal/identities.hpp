#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spheroidal/rational.hpp"

// Exact evaluation of the combinatorial sums behind the first- and
// second-order boundary conditions, and of the identities relating them.
//
// N-families carry a 1/(2l - 2m) factor and are singular at l = m. The
// S-families are the same sums with that factor stripped (S = (2l-2m) N), so
// cancellation conditions such as S1_l + 2E01 S2_l = 0 can be stated for
// every l = 0..m, including m = 0. Floating point is never used here.

namespace spheroidal::identities {

enum class Family { N1, N2, N3, N4, Q1, Q2, Q3, S1, S2, S3 };

std::string family_name(Family f);

class SingularIndex : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct AppendixSum {
  Family family;
  int m;
  int l;
  Rational value;
};

/// Exact value of the family's defining sum at (m, l).
/// N-families throw SingularIndex for l = m. Requires 0 <= l.
Rational n_sum(Family family, int m, int l);
AppendixSum appendix_sum(Family family, int m, int l);

/// Values of Q1/Q2/Q3 at l = 0..m-1 (all expected to vanish). Requires m >= 1.
std::vector<std::pair<int, Rational>> q_vanishing(Family family, int m);

/// 2E01 = -S1_0 / S2_0 and 2E02 = -S3_0 / S2_0 (equivalently -N.0 ratios
/// for m >= 1).
Rational select_E01(int m);
Rational select_E02(int m);

Rational closed_E01(int m);  // -1/(2m+3)
Rational closed_E02(int m);  // -(2m+2)/((2m+3)^3 (2m+5))

/// One evaluated identity: lhs should equal rhs exactly.
struct IdentityCheck {
  std::string identity;
  int m;
  int l;
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs == rhs; }
};

struct RecurrenceReport {
  int m = 0;
  std::vector<IdentityCheck> checks;
  std::vector<IdentityCheck> violations() const;
  bool ok() const { return violations().empty(); }
};

/// N1/N2/N3 step relations, the M-relations, M1_l = M2_l = 0, and N4 = N2.
/// N-form relations are checked for l = 0..m-2 (the only range where both
/// sides are finite); the S-form relations and cancellations for l = 0..m-1
/// and l = 0..m respectively. Requires m >= 1.
RecurrenceReport verify_recurrences(int m);

enum class LeibnizVariant { A1, A2 };

/// A1: sum_{k=l-1}^{m} (-1)^k C(m,k) C(k+1,l);
/// A2: sum_{k=l-1}^{m+1} (-1)^k C(m+1,k) C(k+1,l).
/// Zero for 1 <= l < m (A1) and 1 <= l < m+1 (A2). Outside that range the
/// sum is still evaluated and is generally nonzero.
Rational leibniz_vanishing(int m, int l, LeibnizVariant variant);

struct IntegralPair {
  Rational by_sum;
  Rational closed;
};

/// int_0^1 (1-t^2)^m dt and int_0^1 t^2 (1-t^2)^m dt, each by binomial
/// expansion and by the double-factorial closed form.
std::pair<IntegralPair, IntegralPair> double_factorial_integrals(int m);

/// Laurent polynomial in tau: exponent -> coefficient (zeros omitted).
using Laurent = std::map<int, Rational>;

/// W1 / cos(theta) as the raw double sum over (k, l) in tau = sin(theta),
/// with 2E01 = select_E01(m). Collapses to tau / (2m+3).
Laurent w1_resummation(int m);
/// W2 / cos(theta), same construction. Collapses to
/// -tau/((2m+3)^3(2m+5)) + tau^3/((2m+3)^2(2m+5)).
Laurent w2_resummation(int m);
Laurent w1_tidy(int m);
Laurent w2_tidy(int m);

/// The l = m+1 closed term of int W1 dtheta: tau^2/(4m+6).
Laurent int_w1_tail(int m);
/// The l in {m+1, m+2} closed terms of int W2 dtheta, recomputed from the sum.
Laurent int_w2_tail(int m);
/// A competing closed form for the same terms:
/// -(2m+6) tau/((2m+3)^3(2m+5)) + tau^3/(3(2m+3)^2(2m+7)). Kept for
/// comparison only; it does not match int_w2_tail.
Laurent int_w2_tail_variant(int m);

/// One CSV row of the identity report.
struct ReportRow {
  std::string family;
  int m;
  int l;
  Rational value;
  Rational expected;
  bool pass() const { return value == expected; }
};

/// Every identity for m = 0..m_max.
std::vector<ReportRow> identity_table(int m_max);

}  // namespace spheroidal::identities
