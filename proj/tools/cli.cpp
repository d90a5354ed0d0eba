#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "spheroidal/engine.hpp"
#include "spheroidal/identities.hpp"
#include "spheroidal/io.hpp"
#include "spheroidal/oracle.hpp"
#include "spheroidal/validation.hpp"

namespace spheroidal::cli {

namespace {

using io::json;
using oracle::Real;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

constexpr int kMaxSeriesOrder = 64;
constexpr int kMaxMaxwOrder = 16;
constexpr int kMaxMMax = 64;

struct Options {
  int m = -1;
  int order = 0;
  int m_max = -1;
  int grid = 21;
  int k = 0;
  int k_cap = 0;
  bool force = false;
  std::string out_path;
  std::string format;
  std::vector<std::string> alpha_text;
};

Real parse_alpha(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const Real a = std::strtold(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(a))
    throw UsageError("invalid --alpha value '" + text + "'");
  return a;
}

std::vector<Real> alphas(const Options& o, std::ostream& err, bool allow_zero) {
  if (o.alpha_text.empty()) throw UsageError("at least one --alpha is required");
  std::vector<Real> v;
  for (const auto& t : o.alpha_text) {
    const Real a = parse_alpha(t);
    if (!allow_zero && a == 0) throw UsageError("--alpha must be nonzero");
    if (std::fabs(a) > 1) {
      if (!o.force) throw UsageError("|alpha| > 1 ('" + t + "') requires --force");
      err << "warning: |alpha| = " << t << " > 1; the series is asymptotic and may be meaningless here\n";
    }
    v.push_back(a);
  }
  return v;
}

void require_m(const Options& o) {
  if (o.m < 0) throw UsageError("--m must be >= 0");
}

void require_order(const Options& o, int max_order) {
  if (o.order < 1 || o.order > max_order)
    throw UsageError("--order must be in 1.." + std::to_string(max_order));
}

std::string format_or(const Options& o, const std::string& fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

oracle::OracleOptions oracle_options(const Options& o) {
  oracle::OracleOptions opts;
  try {
    opts = oracle::OracleOptions::from_environment();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.k_cap != 0) {
    if (o.k_cap < 2) throw UsageError("--k-cap must be >= 2");
    opts.k_cap = o.k_cap;
  }
  return opts;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open --out path '" + o.out_path + "'");
  f << text;
  if (!f) throw UsageError("write failed for '" + o.out_path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_series(const Options& o, std::ostream& out) {
  require_m(o);
  require_order(o, kMaxSeriesOrder);
  const std::string fmt = format_or(o, "json");
  const PerturbationSeries s = build_series(o.m, o.order);
  if (fmt == "json") {
    emit(dump(io::series_document(s)), o, out);
  } else {
    std::ostringstream os;
    os << "n,twoE0n,twoE0n_decimal,P\n";
    for (int n = 0; n <= s.order(); ++n) {
      os << n << ',' << s.twoE(n).str() << ',' << io::decimal17(s.twoE(n)) << ',';
      if (n > 0) {
        const UPoly& p = s.term(n).P;
        for (int k = 0; k <= p.degree(); ++k) os << (k ? ";" : "") << p.coeff(k).str();
      }
      os << '\n';
    }
    emit(os.str(), o, out);
  }
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  require_m(o);
  require_order(o, kMaxSeriesOrder);
  if (o.grid < 2) throw UsageError("--grid must be >= 2");
  const std::string fmt = format_or(o, "csv");
  const std::vector<Real> as = alphas(o, err, true);
  const PerturbationSeries s = build_series(o.m, o.order);
  std::ostringstream os;
  json doc = json::array();
  if (fmt == "csv") os << "alpha,E,x,theta0\n";
  for (const Real a : as) {
    const GroundState state(s, a, o.order);
    const Real E = eigenvalue(s, a, o.order);
    json jx = json::array(), jt = json::array();
    for (int i = 0; i < o.grid; ++i) {
      const Real x = -1.0L + 2.0L * i / (o.grid - 1);
      const Real t = theta0(state, x);
      if (fmt == "csv")
        os << io::real_str(a) << ',' << io::real_str(E) << ',' << io::real_str(x) << ',' << io::real_str(t) << '\n';
      jx.push_back(static_cast<double>(x));
      jt.push_back(static_cast<double>(t));
    }
    if (fmt == "json") {
      json row;
      row["alpha"] = static_cast<double>(a);
      row["E"] = static_cast<double>(E);
      row["x"] = std::move(jx);
      row["theta0"] = std::move(jt);
      doc.push_back(std::move(row));
    }
  }
  emit(fmt == "csv" ? os.str() : dump(doc), o, out);
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  require_m(o);
  require_order(o, kMaxSeriesOrder);
  const std::string fmt = format_or(o, "csv");
  const std::vector<Real> as = alphas(o, err, true);
  const oracle::OracleOptions opts = oracle_options(o);
  const PerturbationSeries s = build_series(o.m, o.order);
  const validation::ValidationReport rep = validation::validate(s, o.order, as, opts);
  if (fmt == "csv") {
    std::ostringstream os;
    io::write_validation_csv(os, rep);
    emit(os.str(), o, out);
  } else {
    json doc;
    doc["m"] = rep.m;
    doc["order"] = rep.order;
    json rows = json::array();
    for (const auto& r : rep.rows) {
      json j;
      j["alpha"] = static_cast<double>(r.alpha);
      j["E_series"] = static_cast<double>(r.e_series);
      j["E_oracle"] = static_cast<double>(r.e_oracle);
      j["abs_error"] = static_cast<double>(r.abs_error);
      j["l2_distance"] = r.l2_distance;
      j["ode_residual"] = static_cast<double>(r.ode_residual);
      j["K_used"] = r.K_used;
      j["converged"] = r.converged;
      rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows);
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    doc["slope_eigen"] = opt(rep.eigen_slope);
    doc["slope_l2"] = opt(rep.l2_slope);
    doc["slope_ode"] = opt(rep.ode_slope);
    doc["failures"] = rep.failures;
    emit(dump(doc), o, out);
  }
  for (const auto& r : rep.rows)
    if (!r.converged) err << "oracle not converged at alpha = " << io::real_str(r.alpha) << " (K cap reached)\n";
  for (const auto& f : rep.failures) err << "validation failure: " << f << '\n';
  if (rep.any_unconverged()) return kOracleNotConverged;
  return rep.passed() ? kOk : kValidationFailure;
}

int cmd_identities(const Options& o, std::ostream& out) {
  if (o.m_max < 0 || o.m_max > kMaxMMax) throw UsageError("--m-max must be in 0.." + std::to_string(kMaxMMax));
  const std::string fmt = format_or(o, "csv");
  const auto rows = identities::identity_table(o.m_max);
  if (fmt == "csv") {
    std::ostringstream os;
    io::write_identity_csv(os, rows);
    emit(os.str(), o, out);
  } else {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"family", r.family}, {"m", r.m}, {"l", r.l}, {"value", r.value.str()},
                     {"expected", r.expected.str()}, {"pass", r.pass()}});
    emit(dump(doc), o, out);
  }
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass(); });
  return ok ? kOk : kValidationFailure;
}

int cmd_maxw(const Options& o, std::ostream& out) {
  require_m(o);
  require_order(o, kMaxMaxwOrder);
  const std::string fmt = format_or(o, "csv");
  const PerturbationSeries s = build_series(o.m, o.order);
  std::ostringstream os;
  json rows = json::array();
  bool decreasing = true;
  double prev = 0;
  if (fmt == "csv") os << "n,max_abs_w,ratio_to_previous,decreasing_so_far\n";
  for (int n = 1; n <= o.order; ++n) {
    const double v = max_abs_w(s, n);
    if (n > 1 && !(v < prev)) decreasing = false;
    const std::string ratio = n > 1 ? io::real_str(v / prev) : std::string();
    if (fmt == "csv")
      os << n << ',' << io::real_str(v) << ',' << ratio << ',' << (decreasing ? "true" : "false") << '\n';
    else
      rows.push_back({{"n", n}, {"max_abs_w", v}, {"decreasing_so_far", decreasing}});
    prev = v;
  }
  if (fmt == "json") {
    json doc;
    doc["m"] = o.m;
    doc["rows"] = std::move(rows);
    doc["monotone_decreasing"] = decreasing;
    emit(dump(doc), o, out);
  } else {
    emit(os.str(), o, out);
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.m_max < 0 || o.m_max > kMaxMMax) throw UsageError("--m-max must be in 0.." + std::to_string(kMaxMMax));
  require_order(o, kMaxSeriesOrder);
  const std::string fmt = format_or(o, "csv");
  const std::vector<Real> as = alphas(o, err, true);
  const oracle::OracleOptions opts = oracle_options(o);

  std::vector<PerturbationSeries> series;
  for (int m = 0; m <= o.m_max; ++m) series.push_back(build_series(m, o.order));

  struct Cell {
    int m;
    Real alpha;
    Real e_series = 0;
    oracle::OracleResult ref;
  };
  std::vector<Cell> cells;
  for (int m = 0; m <= o.m_max; ++m)
    for (const Real a : as) cells.push_back({m, a, 0, {}});

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cells.size());
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        Cell& c = cells[i];
        c.e_series = eigenvalue(series[static_cast<std::size_t>(c.m)], c.alpha, o.order);
        c.ref = oracle::solve(c.m, c.alpha, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t nthreads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  bool all_converged = true;
  std::ostringstream os;
  json doc = json::array();
  if (fmt == "csv") os << "m,alpha,order,E_series,E_oracle,abs_error,K_used,converged\n";
  for (const Cell& c : cells) {
    const Real diff = validation::eigenvalue_error(series[static_cast<std::size_t>(c.m)], o.order, c.alpha, c.ref);
    all_converged = all_converged && c.ref.converged;
    if (fmt == "csv") {
      os << c.m << ',' << io::real_str(c.alpha) << ',' << o.order << ',' << io::real_str(c.e_series) << ','
         << io::real_str(c.ref.eigenvalue) << ',' << io::real_str(diff) << ',' << c.ref.K_used << ','
         << (c.ref.converged ? "true" : "false") << '\n';
    } else {
      doc.push_back({{"m", c.m}, {"alpha", static_cast<double>(c.alpha)}, {"order", o.order},
                     {"E_series", static_cast<double>(c.e_series)},
                     {"E_oracle", static_cast<double>(c.ref.eigenvalue)}, {"abs_error", static_cast<double>(diff)},
                     {"K_used", c.ref.K_used}, {"converged", c.ref.converged}});
    }
  }
  emit(fmt == "csv" ? os.str() : dump(doc), o, out);
  return all_converged ? kOk : kOracleNotConverged;
}

int cmd_oracle_solve(const Options& o, std::ostream& out, std::ostream& err) {
  require_m(o);
  if (o.alpha_text.size() != 1) throw UsageError("oracle solve takes exactly one --alpha");
  const Real a = alphas(o, err, true).front();
  oracle::OracleResult r;
  if (o.k != 0) {
    if (o.k < 2) throw UsageError("--k must be >= 2");
    const oracle::SpectralProblem p = oracle::build_problem(o.m, a, o.k);
    r.reduced = oracle::smallest_reduced_eigenvalue(p);
    r.eigenvalue = p.shift + r.reduced;
    r.coefficients = oracle::ground_eigenvector(p, r.reduced);
    r.K_used = o.k;
    r.converged = true;
  } else {
    r = oracle::solve(o.m, a, oracle_options(o));
  }
  json doc;
  doc["eigenvalue"] = static_cast<double>(r.eigenvalue);
  doc["K_used"] = r.K_used;
  json c = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(8, r.coefficients.size()); ++i)
    c.push_back(static_cast<double>(r.coefficients[i]));
  doc["coefficients"] = std::move(c);
  doc["converged"] = r.converged;
  emit(dump(doc), o, out);
  if (!r.converged) {
    err << "oracle not converged: K cap reached at K = " << r.K_used << '\n';
    return kOracleNotConverged;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SUSYQM perturbation series for the spheroidal ground state", "susy_spheroidal"};
  app.require_subcommand(1);
  Options o;

  auto add_m = [&](CLI::App* c) { c->add_option("--m", o.m, "azimuthal index m >= 0")->required(); };
  auto add_order = [&](CLI::App* c) { c->add_option("--order", o.order, "truncation order N >= 1")->required(); };
  auto add_alpha = [&](CLI::App* c) {
    c->add_option("--alpha", o.alpha_text, "alpha value (repeatable)")->required()->take_all();
  };
  auto add_output = [&](CLI::App* c) {
    c->add_option("--out", o.out_path, "write the report here instead of stdout");
    c->add_option("--format", o.format, "json or csv");
  };
  auto add_force = [&](CLI::App* c) { c->add_flag("--force", o.force, "allow |alpha| > 1"); };
  auto add_kcap = [&](CLI::App* c) { c->add_option("--k-cap", o.k_cap, "largest oracle basis size"); };

  CLI::App* series = app.add_subcommand("series", "exact series coefficients as JSON");
  add_m(series);
  add_order(series);
  add_output(series);

  CLI::App* eval = app.add_subcommand("eval", "eigenvalue and ground eigenfunction on a grid");
  add_m(eval);
  add_order(eval);
  add_alpha(eval);
  eval->add_option("--grid", o.grid, "number of x points on [-1, 1]");
  add_output(eval);
  add_force(eval);

  CLI::App* validate = app.add_subcommand("validate", "compare the series with the Galerkin oracle");
  add_m(validate);
  add_order(validate);
  add_alpha(validate);
  add_output(validate);
  add_force(validate);
  add_kcap(validate);

  CLI::App* ident = app.add_subcommand("identities", "exact combinatorial identities");
  ident->require_subcommand(1);
  CLI::App* report = ident->add_subcommand("report", "CSV table over m = 0..m-max");
  report->add_option("--m-max", o.m_max, "largest m")->required();
  add_output(report);

  CLI::App* maxw = app.add_subcommand("maxw", "max |W_n| for n = 1..N");
  add_m(maxw);
  add_order(maxw);
  add_output(maxw);

  CLI::App* sweep = app.add_subcommand("sweep", "series vs oracle eigenvalue over (m, alpha) cells");
  sweep->add_option("--m-max", o.m_max, "largest m")->required();
  add_order(sweep);
  add_alpha(sweep);
  add_output(sweep);
  add_force(sweep);
  add_kcap(sweep);

  CLI::App* orc = app.add_subcommand("oracle", "Galerkin reference solver");
  orc->require_subcommand(1);
  CLI::App* solve = orc->add_subcommand("solve", "ground eigenpair as JSON");
  add_m(solve);
  add_alpha(solve);
  solve->add_option("--k", o.k, "fixed basis size (disables adaptation)");
  add_output(solve);
  add_force(solve);
  add_kcap(solve);

  std::vector<const char*> argv{"susy_spheroidal"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*series) return cmd_series(o, out);
    if (*eval) return cmd_eval(o, out, err);
    if (*validate) return cmd_validate(o, out, err);
    if (*report) return cmd_identities(o, out);
    if (*maxw) return cmd_maxw(o, out);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*solve) return cmd_oracle_solve(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const oracle::NotConverged& e) {
    err << "error: " << e.what() << '\n';
    return kOracleNotConverged;
  } catch (const InconsistentOrder& e) {
    err << "error: inconsistent order " << e.order() << ": " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}

}  // namespace spheroidal::cli
