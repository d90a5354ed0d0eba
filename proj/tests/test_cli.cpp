#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "spheroidal/io.hpp"

using namespace spheroidal;
using spheroidal::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("series emits the exact coefficients") {
  const Run r = run({"series", "--m", "0", "--order", "2"});
  REQUIRE(r.code == 0);
  const auto doc = io::json::parse(r.out);
  CHECK(doc["twoE0n"] == io::json::array({"0", "-1/3", "-2/135"}));
  CHECK(doc["twoE0n_decimal"][2] == "-1.4814814814814815e-02");
  const auto back = io::series_from_json(doc);
  CHECK(back.twoE(2) == Rational(-2, 135));

  const Run r1 = run({"series", "--m", "1", "--order", "1"});
  CHECK(io::json::parse(r1.out)["twoE0n"] == io::json::array({"2", "-1/5"}));
}

TEST_CASE("series usage errors") {
  CHECK(run({"series", "--m", "0", "--order", "0"}).code == 3);
  CHECK(run({"series", "--m", "0", "--order", "65"}).code == 3);
  CHECK(run({"series", "--m", "-1", "--order", "2"}).code == 3);
  CHECK(run({"series", "--order", "2"}).code == 3);
  CHECK(run({"series", "--m", "0", "--order", "2", "--format", "xml"}).code == 3);
  CHECK(run({"series", "--m", "zero", "--order", "2"}).code == 3);
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("series CSV") {
  const Run r = run({"series", "--m", "0", "--order", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "n,twoE0n,twoE0n_decimal,P\n"
        "0,0,0.0000000000000000e+00,\n"
        "1,-1/3,-3.3333333333333333e-01,1/3\n"
        "2,-2/135,-1.4814814814814815e-02,-1/135;1/45\n");
}

TEST_CASE("identities report") {
  const Run r = run({"identities", "report", "--m-max", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("family,m,l,value,expected,pass\n", 0) == 0);
  CHECK(r.out.find(",false\n") == std::string::npos);
  const Run big = run({"identities", "report", "--m-max", "20"});
  CHECK(big.code == 0);
  CHECK(big.out.find("\nN4_eq_N2,") != std::string::npos);
  CHECK(run({"identities", "report", "--m-max", "65"}).code == 3);
  CHECK(run({"identities"}).code == 3);
}

TEST_CASE("maxw table") {
  const Run r = run({"maxw", "--m", "0", "--order", "10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,max_abs_w,ratio_to_previous,decreasing_so_far\n1,0.16666666666666666,,true\n", 0) == 0);
  CHECK(r.out.find("\n10,") != std::string::npos);
  CHECK(r.out.find("false") == std::string::npos);
  const Run r1 = run({"maxw", "--m", "1", "--order", "1", "--format", "json"});
  const auto doc = io::json::parse(r1.out);
  CHECK(doc["rows"][0]["max_abs_w"].get<double>() == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(run({"maxw", "--m", "0", "--order", "17"}).code == 3);
}

TEST_CASE("validate exit codes") {
  const Run ok = run({"validate", "--m", "0", "--order", "2", "--alpha", "0", "--alpha", "0.2", "0.1", "0.05", "0.025"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("\nfit,0,2,") != std::string::npos);
  CHECK(run({"validate", "--m", "0", "--order", "2", "--alpha", "2"}).code == 3);
  const Run forced = run({"validate", "--m", "0", "--order", "1", "--alpha", "1.5", "--force"});
  CHECK(forced.code == 0);
  CHECK(forced.err.find("warning") != std::string::npos);
  const Run nc = run({"validate", "--m", "0", "--order", "2", "--alpha", "0.1", "--alpha", "0.05", "--k-cap", "8"});
  CHECK(nc.code == 4);
  CHECK(nc.out.find(",false,") != std::string::npos);
  CHECK(run({"validate", "--m", "0", "--order", "2", "--alpha", "abc"}).code == 3);
  const Run neg = run({"validate", "--m", "1", "--order", "2", "--alpha", "-0.1", "-0.05", "--format", "json"});
  CHECK(neg.code == 0);
  CHECK(io::json::parse(neg.out)["rows"].size() == 2);
}

TEST_CASE("oracle solve") {
  const Run r = run({"oracle", "solve", "--m", "0", "--alpha", "0.1", "--k", "64"});
  REQUIRE(r.code == 0);
  const auto doc = io::json::parse(r.out);
  CHECK(doc["K_used"] == 64);
  CHECK(doc["coefficients"].size() == 8);
  CHECK(doc["eigenvalue"].get<double>() == doctest::Approx(-0.0334819504100483).epsilon(1e-13));
  const Run adaptive = run({"oracle", "solve", "--m", "2", "--alpha", "0.3"});
  CHECK(adaptive.code == 0);
  CHECK(run({"oracle", "solve", "--m", "0", "--alpha", "0.1", "--alpha", "0.2"}).code == 3);
  CHECK(run({"oracle", "solve", "--m", "0", "--alpha", "0.1", "--k-cap", "4"}).code == 4);
}

TEST_CASE("sweep keeps cell order") {
  const Run r = run({"sweep", "--m-max", "2", "--order", "2", "--alpha", "0.1", "0.05"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "m,alpha,order,E_series,E_oracle,abs_error,K_used,converged");
  std::vector<std::string> prefixes{"0,0.1,", "0,0.05,", "1,0.1,", "1,0.05,", "2,0.1,", "2,0.05,"};
  for (const auto& p : prefixes) {
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind(p, 0) == 0);
  }
}

TEST_CASE("eval grid") {
  const Run r = run({"eval", "--m", "1", "--order", "2", "--alpha", "0.1", "--grid", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("alpha,E,x,theta0\n0.1,", 0) == 0);
  CHECK(r.out.find(",-1,0\n") != std::string::npos);  // Theta_0 vanishes at x = -1 for m = 1
  CHECK(run({"eval", "--m", "1", "--order", "2", "--alpha", "0.1", "--grid", "1"}).code == 3);
}

TEST_CASE("output files are deterministic") {
  const auto dir = std::filesystem::temp_directory_path() / "susy_spheroidal_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.csv", b = dir / "b.csv";
  const std::vector<std::string> base{"validate", "--m", "1", "--order", "2", "--alpha", "0.1", "0.05"};
  auto with_out = [&](const std::filesystem::path& p) {
    auto v = base;
    v.push_back("--out");
    v.push_back(p.string());
    return v;
  };
  CHECK(run(with_out(a)).code == 0);
  CHECK(run(with_out(b)).code == 0);
  const std::string ca = read_file(a);
  CHECK(!ca.empty());
  CHECK(ca == read_file(b));
  CHECK(ca.find('\r') == std::string::npos);
  CHECK(run({"series", "--m", "0", "--order", "2", "--out", (dir / "missing" / "x.json").string()}).code == 3);
  std::filesystem::remove_all(dir);
}

}
