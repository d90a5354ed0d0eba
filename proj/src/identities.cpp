#include "spheroidal/identities.hpp"

#include <algorithm>
#include <set>

#include "spheroidal/combinatorics.hpp"

namespace spheroidal::identities {

namespace {

Rational R(long v) { return Rational(v); }
Rational R(long n, long d) { return Rational(n, d); }
Rational R(const BigInt& v) { return Rational(v); }

// (2m+3)^2
Rational sq3(int m) { return R((2L * m + 3) * (2L * m + 3)); }

Rational s1(int m, int l) {
  Rational acc;
  for (long k = std::max(l - 1, 0); k <= m; ++k)
    acc += R(parity_sign(k + l + 1) * binom(m, k) * binom(k + 1, l)) / R(2 * k + 3);
  return acc;
}

Rational s2(int m, int l) {
  Rational acc;
  for (long k = l; k <= m; ++k)
    acc += R(parity_sign(k + l + 1) * binom(m, k) * binom(k, l)) / R(2 * k + 1);
  return acc;
}

Rational s3(int m, int l) {
  Rational acc;
  for (long k = std::max(l - 1, 0); k <= m + 1; ++k)
    acc += R(parity_sign(k + l + 1) * binom(m + 1, k) * binom(k + 1, l)) / R(2 * k + 3);
  return acc / sq3(m);
}

// N4 written out from its own definition.
Rational n4(int m, int l) {
  Rational acc;
  for (long k = l; k <= m; ++k) {
    acc += R(parity_sign(k + l + 1) * binom(m, k) * binom(k, l)) /
           (R(2 * k + 1) * R(2L * l - 2L * m));
  }
  return acc;
}

Rational q1(int m, int l) {
  BigInt acc = 0;
  for (long k = l - 1; k <= m; ++k) {
    if (k < 0) continue;  // C(m, -1) = 0
    acc += parity_sign(k + l) * binom(m, k) * binom(k + 1, l);
  }
  return R(acc) / R(2L * l + 2);
}

Rational q2(int m, int l) {
  BigInt acc = 0;
  for (long k = l; k <= m; ++k) acc += parity_sign(k + l) * binom(m, k) * binom(k, l);
  return R(acc) / R(2L * l + 2);
}

Rational q3(int m, int l) {
  BigInt acc = 0;
  for (long k = l - 1; k <= m + 1; ++k) {
    if (k < 0) continue;
    acc += parity_sign(k + l) * binom(m + 1, k) * binom(k + 1, l);
  }
  return R(acc) / R(2L * l + 2);
}

// Split forms as first written: the k = l-1 (resp. k = l) term separated.
Rational q1_split(int m, int l) {
  Rational tail;
  for (long k = l; k <= m; ++k)
    tail += R(parity_sign(k + l) * binom(m, k) * binom(k + 1, l)) / R(2L * l + 2);
  return -R(binom(m, l - 1 < 0 ? -1 : l - 1)) / R(2L * l + 2) + tail;
}

Rational q2_split(int m, int l) {
  Rational tail;
  for (long k = l + 1; k <= m; ++k)
    tail += R(parity_sign(k + l) * binom(m, k) * binom(k, l)) / R(2L * l + 2);
  return R(binom(m, l)) / R(2L * l + 2) + tail;
}

Rational q3_split(int m, int l) {
  Rational tail;
  for (long k = l; k <= m + 1; ++k)
    tail += R(parity_sign(k + l) * binom(m + 1, k) * binom(k + 1, l)) / R(2L * l + 2);
  return -R(binom(m + 1, l - 1 < 0 ? -1 : l - 1)) / R(2L * l + 2) + tail;
}

Rational df_ratio(long a, long b) { return Rational(double_factorial(a), double_factorial(b)); }

void add_term(Laurent& p, int exponent, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

// sum_k sign(k+1) C(top,k) (1-t^2)^{k+shift} / ((2k+2shift+1) * scale) * t^{-2m-1}
void add_cos_power_sum(Laurent& p, int m, int top, int shift, const Rational& scale) {
  for (long k = 0; k <= top; ++k) {
    const Rational outer = R(parity_sign(k + 1) * binom(top, k)) / (R(2 * k + 2L * shift + 1) * scale);
    for (long l = 0; l <= k + shift; ++l) {
      add_term(p, static_cast<int>(2 * l - 2 * m - 1),
               outer * R(parity_sign(l) * binom(k + shift, l)));
    }
  }
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::N1: return "N1";
    case Family::N2: return "N2";
    case Family::N3: return "N3";
    case Family::N4: return "N4";
    case Family::Q1: return "Q1";
    case Family::Q2: return "Q2";
    case Family::Q3: return "Q3";
    case Family::S1: return "S1";
    case Family::S2: return "S2";
    case Family::S3: return "S3";
  }
  return "?";
}

Rational n_sum(Family family, int m, int l) {
  if (m < 0 || l < 0) throw std::invalid_argument("n_sum: m and l must be nonnegative");
  const bool singular_family = family == Family::N1 || family == Family::N2 ||
                               family == Family::N3 || family == Family::N4;
  if (singular_family && l == m)
    throw SingularIndex("n_sum: " + family_name(family) + " is singular at l = m");
  const Rational inv = singular_family ? Rational(1) / R(2L * l - 2L * m) : Rational(1);
  switch (family) {
    case Family::N1: return s1(m, l) * inv;
    case Family::N2: return s2(m, l) * inv;
    case Family::N3: return s3(m, l) * inv;
    case Family::N4: return n4(m, l);
    case Family::Q1: return q1(m, l);
    case Family::Q2: return q2(m, l);
    case Family::Q3: return q3(m, l);
    case Family::S1: return s1(m, l);
    case Family::S2: return s2(m, l);
    case Family::S3: return s3(m, l);
  }
  throw std::invalid_argument("n_sum: unknown family");
}

AppendixSum appendix_sum(Family family, int m, int l) {
  return AppendixSum{family, m, l, n_sum(family, m, l)};
}

std::vector<std::pair<int, Rational>> q_vanishing(Family family, int m) {
  if (family != Family::Q1 && family != Family::Q2 && family != Family::Q3)
    throw std::invalid_argument("q_vanishing: family must be Q1, Q2 or Q3");
  if (m < 1) throw std::invalid_argument("q_vanishing: m must be >= 1");
  std::vector<std::pair<int, Rational>> out;
  for (int l = 0; l < m; ++l) out.emplace_back(l, n_sum(family, m, l));
  return out;
}

Rational select_E01(int m) { return -s1(m, 0) / s2(m, 0); }
Rational select_E02(int m) { return -s3(m, 0) / s2(m, 0); }

Rational closed_E01(int m) { return R(-1, 2L * m + 3); }

Rational closed_E02(int m) {
  const long q = 2L * m + 3;
  return R(-(2L * m + 2), q * q * q * (2L * m + 5));
}

std::vector<IdentityCheck> RecurrenceReport::violations() const {
  std::vector<IdentityCheck> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
               [](const IdentityCheck& c) { return !c.holds(); });
  return out;
}

RecurrenceReport verify_recurrences(int m) {
  if (m < 1) throw std::invalid_argument("verify_recurrences: m must be >= 1");
  RecurrenceReport rep;
  rep.m = m;
  auto add = [&](std::string name, int l, Rational lhs, Rational rhs) {
    rep.checks.push_back(IdentityCheck{std::move(name), m, l, std::move(lhs), std::move(rhs)});
  };
  const Rational e01 = select_E01(m);
  const Rational e02 = select_E02(m);
  auto N = [m](Family f, int l) { return n_sum(f, m, l); };
  auto M1 = [&](int l) { return N(Family::N1, l) + e01 * N(Family::N2, l); };
  auto M2 = [&](int l) { return N(Family::N3, l) + e02 * N(Family::N4, l); };

  for (int l = 0; l + 1 <= m - 1; ++l) {
    const Rational half_ratio = R(2L * l + 1, 2L * l + 2);  // (l + 1/2) / (l + 1)
    const Rational gap = R(2L * l - 2L * m);
    const Rational gap_next = R(2L * l + 2 - 2L * m);
    const Rational m_ratio = half_ratio * gap / gap_next;
    add("N1_step", l, gap_next * N(Family::N1, l + 1),
        half_ratio * gap * N(Family::N1, l) + q1(m, l));
    add("N2_step", l, gap_next * N(Family::N2, l + 1),
        half_ratio * gap * N(Family::N2, l) + q2(m, l));
    add("N3_step", l, N(Family::N3, l + 1),
        m_ratio * N(Family::N3, l) + q3(m, l) / (sq3(m) * gap_next));
    add("M1_relation", l, M1(l + 1), m_ratio * M1(l) + (q1(m, l) + e01 * q2(m, l)));
    add("M2_relation", l, M2(l + 1), m_ratio * M2(l) + q3(m, l) / (sq3(m) * gap_next));
    add("M2_relation2", l, M2(l + 1), m_ratio * M2(l));
  }
  for (int l = 0; l < m; ++l) {
    const Rational half_ratio = R(2L * l + 1, 2L * l + 2);
    add("S1_step", l, s1(m, l + 1), half_ratio * s1(m, l) + q1(m, l));
    add("S2_step", l, s2(m, l + 1), half_ratio * s2(m, l) + q2(m, l));
    add("S3_step", l, s3(m, l + 1), half_ratio * s3(m, l) + q3(m, l) / sq3(m));
    add("M1_zero", l, M1(l), Rational());
    add("M2_zero", l, M2(l), Rational());
    add("N4_eq_N2", l, N(Family::N4, l), N(Family::N2, l));
    add("Q1", l, q1(m, l), Rational());
    add("Q2", l, q2(m, l), Rational());
    add("Q3", l, q3(m, l), Rational());
    add("Q1_split", l, q1_split(m, l), q1(m, l));
    add("Q2_split", l, q2_split(m, l), q2(m, l));
    add("Q3_split", l, q3_split(m, l), q3(m, l));
  }
  for (int l = 0; l <= m; ++l) {
    add("S_cancel_1", l, s1(m, l) + e01 * s2(m, l), Rational());
    add("S_cancel_2", l, s3(m, l) + e02 * s2(m, l), Rational());
  }
  const Rational inv2m = R(1, 2L * m);
  add("N1_0_closed", 0, N(Family::N1, 0), inv2m * (df_ratio(2L * m, 2L * m + 1) - df_ratio(2L * m + 2, 2L * m + 3)));
  add("N2_0_closed", 0, N(Family::N2, 0), inv2m * df_ratio(2L * m, 2L * m + 1));
  add("N3_0_closed", 0, N(Family::N3, 0),
      inv2m / sq3(m) * (df_ratio(2L * m + 2, 2L * m + 3) - df_ratio(2L * m + 4, 2L * m + 5)));
  return rep;
}

Rational leibniz_vanishing(int m, int l, LeibnizVariant variant) {
  if (m < 0 || l < 0) throw std::invalid_argument("leibniz_vanishing: m and l must be nonnegative");
  const long top = variant == LeibnizVariant::A1 ? m : m + 1;
  BigInt acc = 0;
  for (long k = std::max(l - 1, 0); k <= top; ++k) acc += parity_sign(k) * binom(top, k) * binom(k + 1, l);
  return R(acc);
}

std::pair<IntegralPair, IntegralPair> double_factorial_integrals(int m) {
  if (m < 0) throw std::invalid_argument("double_factorial_integrals: m must be nonnegative");
  Rational plain, tau2;
  for (long k = 0; k <= m; ++k) {
    const Rational c = R(parity_sign(k) * binom(m, k));
    plain += c / R(2 * k + 1);
    tau2 += c / R(2 * k + 3);
  }
  const Rational a = df_ratio(2L * m, 2L * m + 1);
  const Rational b = df_ratio(2L * m + 2, 2L * m + 3);
  return {IntegralPair{plain, a}, IntegralPair{tau2, a - b}};
}

Laurent w1_resummation(int m) {
  Laurent p;
  add_cos_power_sum(p, m, m, 1, Rational(1));
  Laurent second;
  add_cos_power_sum(second, m, m, 0, Rational(1));
  const Rational e01 = select_E01(m);
  for (const auto& [e, c] : second) add_term(p, e, e01 * c);
  return p;
}

Laurent w2_resummation(int m) {
  Laurent p;
  add_cos_power_sum(p, m, m + 1, 1, sq3(m));
  Laurent second;
  add_cos_power_sum(second, m, m, 0, Rational(1));
  const Rational e02 = select_E02(m);
  for (const auto& [e, c] : second) add_term(p, e, e02 * c);
  return p;
}

Laurent w1_tidy(int m) { return Laurent{{1, R(1, 2L * m + 3)}}; }

Laurent w2_tidy(int m) {
  const long q = 2L * m + 3;
  const long r = 2L * m + 5;
  return Laurent{{1, R(-1, q * q * q * r)}, {3, R(1, q * q * r)}};
}

Laurent int_w1_tail(int m) {
  Laurent p;
  const long l = m + 1;
  for (long k = std::max(l - 1, 0L); k <= m; ++k) {
    add_term(p, static_cast<int>(2 * l - 2 * m),
             R(parity_sign(k + l + 1) * binom(m, k) * binom(k + 1, l)) / (R(2 * k + 3) * R(2 * l - 2L * m)));
  }
  return p;
}

Laurent int_w2_tail(int m) {
  Laurent p;
  for (long l = m + 1; l <= m + 2; ++l) {
    for (long k = l - 1; k <= m + 1; ++k) {
      add_term(p, static_cast<int>(2 * l - 2 * m),
               R(parity_sign(k + l + 1) * binom(m + 1, k) * binom(k + 1, l)) /
                   (sq3(m) * R(2 * k + 3) * R(2 * l - 2L * m)));
    }
  }
  return p;
}

Laurent int_w2_tail_variant(int m) {
  const long q = 2L * m + 3;
  return Laurent{{1, R(-(2L * m + 6), q * q * q * (2L * m + 5))}, {3, R(1, 3 * q * q * (2L * m + 7))}};
}

std::vector<ReportRow> identity_table(int m_max) {
  if (m_max < 0) throw std::invalid_argument("identity_table: m_max must be nonnegative");
  std::vector<ReportRow> rows;
  auto laurent_rows = [&rows](const std::string& name, int m, const Laurent& got, const Laurent& want) {
    std::set<int> exps;
    for (const auto& [e, c] : got) exps.insert(e);
    for (const auto& [e, c] : want) exps.insert(e);
    for (int e : exps) {
      const auto g = got.find(e);
      const auto w = want.find(e);
      rows.push_back(ReportRow{name, m, e, g == got.end() ? Rational() : g->second,
                               w == want.end() ? Rational() : w->second});
    }
  };
  for (int m = 0; m <= m_max; ++m) {
    rows.push_back(ReportRow{"E01", m, 0, select_E01(m), closed_E01(m)});
    rows.push_back(ReportRow{"E02", m, 0, select_E02(m), closed_E02(m)});
    const auto [plain, tau2] = double_factorial_integrals(m);
    rows.push_back(ReportRow{"DF_int", m, 0, plain.by_sum, plain.closed});
    rows.push_back(ReportRow{"DF_int_tau2", m, 0, tau2.by_sum, tau2.closed});
    if (m == 0) {
      // The l = m cancellations are the only boundary conditions at m = 0.
      rows.push_back(ReportRow{"S_cancel_1", 0, 0, s1(0, 0) + select_E01(0) * s2(0, 0), Rational()});
      rows.push_back(ReportRow{"S_cancel_2", 0, 0, s3(0, 0) + select_E02(0) * s2(0, 0), Rational()});
    } else {
      for (const auto& c : verify_recurrences(m).checks)
        rows.push_back(ReportRow{c.identity, m, c.l, c.lhs, c.rhs});
      for (int l = 1; l < m; ++l)
        rows.push_back(ReportRow{"Leibniz_A1", m, l, leibniz_vanishing(m, l, LeibnizVariant::A1), Rational()});
    }
    for (int l = 1; l < m + 1; ++l)
      rows.push_back(ReportRow{"Leibniz_A2", m, l, leibniz_vanishing(m, l, LeibnizVariant::A2), Rational()});
    laurent_rows("W1_tidy", m, w1_resummation(m), w1_tidy(m));
    laurent_rows("W2_tidy", m, w2_resummation(m), w2_tidy(m));
    laurent_rows("int_W1_tail", m, int_w1_tail(m), Laurent{{2, R(1, 4L * m + 6)}});
    {
      const long q = 2L * m + 3;
      const long r = 2L * m + 5;
      laurent_rows("int_W2_tail", m, int_w2_tail(m),
                   Laurent{{2, R(-1, 2 * q * q * q * r)}, {4, R(1, 4 * q * q * r)}});
    }
  }
  return rows;
}

}  // namespace spheroidal::identities
