#include "spheroidal/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace spheroidal::io {

std::string decimal17(const Rational& r) {
  if (r.is_zero()) return "0.0000000000000000e+00";
  const BigInt a = abs(r.num());
  const BigInt& q = r.den();
  // e = floor(log10(a/q)); start from a size estimate and correct.
  long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 10));
  auto pow10 = [](unsigned long k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
    return p;
  };
  auto ge_pow = [&](long k) {  // a/q >= 10^k
    return k >= 0 ? a >= q * pow10(static_cast<unsigned long>(k))
                  : a * pow10(static_cast<unsigned long>(-k)) >= q;
  };
  while (!ge_pow(e)) --e;
  while (ge_pow(e + 1)) ++e;

  BigInt num = a, den = q;
  const long shift = 16 - e;
  if (shift >= 0)
    num *= pow10(static_cast<unsigned long>(shift));
  else
    den *= pow10(static_cast<unsigned long>(-shift));
  BigInt t, rem;
  mpz_fdiv_qr(t.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int c = cmp(BigInt(2 * rem), den);
  if (c > 0 || (c == 0 && mpz_odd_p(t.get_mpz_t()))) ++t;
  if (t == pow10(17)) {
    t = pow10(16);
    ++e;
  }
  const std::string digits = t.get_str();
  std::string out;
  if (r.sign() < 0) out += '-';
  out += digits[0];
  out += '.';
  out += digits.substr(1);
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
  out += buf;
  return out;
}

std::string real_str(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
  return Rational::parse(j.get<std::string>());
}

json to_json(const UPoly& p) {
  json arr = json::array();
  for (int k = 0; k <= p.degree(); ++k) arr.push_back(to_json(p.coeff(k)));
  return arr;
}

UPoly upoly_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of \"p/q\" strings");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return UPoly(std::move(c));
}

json to_json(const PerturbationSeries& s) {
  json doc;
  doc["m"] = s.m();
  json terms = json::array();
  for (const auto& t : s.terms()) {
    json jt;
    jt["n"] = t.n;
    jt["P"] = to_json(t.P);
    jt["twoE0n"] = to_json(t.twoE);
    terms.push_back(std::move(jt));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

PerturbationSeries series_from_json(const json& j) {
  try {
    const int m = j.at("m").get<int>();
    std::vector<SeriesTerm> terms;
    for (const auto& jt : j.at("terms")) {
      SeriesTerm t;
      t.n = jt.at("n").get<int>();
      t.P = upoly_from_json(jt.at("P"));
      t.twoE = rational_from_json(jt.at("twoE0n"));
      terms.push_back(std::move(t));
    }
    return PerturbationSeries(m, std::move(terms));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("series JSON: ") + e.what());
  }
}

json series_document(const PerturbationSeries& s) {
  json doc = to_json(s);
  json exact = json::array();
  json dec = json::array();
  for (int n = 0; n <= s.order(); ++n) {
    exact.push_back(to_json(s.twoE(n)));
    dec.push_back(decimal17(s.twoE(n)));
  }
  doc["twoE0n"] = std::move(exact);
  doc["twoE0n_decimal"] = std::move(dec);
  return doc;
}

void write_identity_csv(std::ostream& os, const std::vector<identities::ReportRow>& rows) {
  os << "family,m,l,value,expected,pass\n";
  for (const auto& r : rows)
    os << r.family << ',' << r.m << ',' << r.l << ',' << r.value.str() << ',' << r.expected.str() << ','
       << (r.pass() ? "true" : "false") << '\n';
}

void write_validation_csv(std::ostream& os, const validation::ValidationReport& rep) {
  os << "record,m,order,alpha,E_series,E_oracle,abs_error,l2_distance,ode_residual,K_used,converged,"
        "slope_eigen,slope_l2,slope_ode\n";
  for (const auto& r : rep.rows) {
    os << "row," << rep.m << ',' << rep.order << ',' << real_str(r.alpha) << ',' << real_str(r.e_series) << ','
       << real_str(r.e_oracle) << ',' << real_str(r.abs_error) << ',' << real_str(r.l2_distance) << ','
       << real_str(r.ode_residual) << ',' << r.K_used << ',' << (r.converged ? "true" : "false") << ",,,\n";
  }
  auto opt = [](const std::optional<double>& v) { return v ? real_str(*v) : std::string(); };
  os << "fit," << rep.m << ',' << rep.order << ",,,,,,,,," << opt(rep.eigen_slope) << ',' << opt(rep.l2_slope)
     << ',' << opt(rep.ode_slope) << '\n';
}

}  // namespace spheroidal::io
