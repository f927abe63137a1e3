#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lslab/parse.hpp"
#include "lslab/rng.hpp"

using namespace lslab;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& stdout_file) {
  std::string cmd = std::string(LSLAB_CLI_PATH) + " " + args + " > " + stdout_file;
  int rc = std::system(cmd.c_str());
  std::ifstream in(stdout_file);
  std::stringstream ss;
  ss << in.rdbuf();
  int code = rc == -1 ? -1 : WEXITSTATUS(rc);
  return {code, ss.str()};
}

SparsePolynomial random_poly(std::uint64_t seed) {
  int n = 1 + static_cast<int>(uniform01(seed, 0) * 3);
  SparsePolynomial p(n);
  int terms = 1 + static_cast<int>(uniform01(seed, 1) * 4);
  std::uint64_t c = 2;
  for (int t = 0; t < terms; ++t) {
    MultiIndex idx(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      idx[static_cast<size_t>(i)] = static_cast<int>(uniform01(seed, c++) * 4);
    double re = uniform01(seed, c++) - 0.5;
    double im = uniform01(seed, c++) - 0.5;
    p.add_term(idx, Complex(re, im));
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial JSON parsing") {
  std::string cusp_json =
      R"({"dimension":2,"terms":[{"exponents":[2,0],"coeff":[1,0]},{"exponents":[0,3],"coeff":[-1,0]}]})";
  SparsePolynomial p = parse_polynomial_json(cusp_json);
  CHECK(p == parse_polynomial_shorthand("z1^2 - z2^3"));

  std::string dup =
      R"({"dimension":2,"terms":[{"exponents":[1,1],"coeff":[1,0]},{"exponents":[1,1],"coeff":[2,0]}]})";
  SparsePolynomial q = parse_polynomial_json(dup);
  CHECK(q.terms().size() == 1);
  CHECK(q.terms().begin()->second == Complex(3.0, 0.0));

  SparsePolynomial empty = parse_polynomial_json(R"({"dimension":2,"terms":[]})");
  CHECK(empty.is_constant());

  CHECK_THROWS_AS(parse_polynomial_json("{"), LabError);
  CHECK_THROWS_AS(parse_polynomial_json(R"({"dimension":0,"terms":[]})"), LabError);
  CHECK_THROWS_AS(
      parse_polynomial_json(R"({"dimension":2,"terms":[{"exponents":[1],"coeff":[1,0]}]})"),
      LabError);
}

TEST_CASE("shorthand parsing") {
  SparsePolynomial cusp(2);
  cusp.add_term({2, 0}, Complex(1, 0));
  cusp.add_term({0, 3}, Complex(-1, 0));
  CHECK(parse_polynomial("z1^2 - z2^3") == cusp);
  SparsePolynomial p = parse_polynomial_shorthand("2 z1 z2^4 + (0.5+1i) - z1^2");
  std::vector<Complex> z = {Complex(0.5, 0), Complex(1.0, 0)};
  CHECK(p.evaluate(z) == Complex(2.0 * 0.5 + 0.5 - 0.25, 1.0));
  CHECK_THROWS_AS(parse_polynomial_shorthand("z1 +"), LabError);
  CHECK_THROWS_AS(parse_polynomial_shorthand("z1^^2"), LabError);
  CHECK_THROWS_AS(parse_polynomial_shorthand("w1"), LabError);
}

TEST_CASE("round trip: parse(emit(p)) == p") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    SparsePolynomial p = random_poly(s);
    CHECK(parse_polynomial_json(emit_polynomial_json(p)) == p);
  }
}

TEST_CASE("cli: volume with reference and schema") {
  auto r = run_cli(
      "volume --poly \"z1 z2\" --eps 0.1 --samples 2e5 --seed 42 --workers 2",
      "/tmp/lslab_vol.json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["command"] == "volume");
  CHECK(doc["result"].contains("value"));
  CHECK(doc["result"].contains("std_error"));
  CHECK(doc["reference"]["exact"] == true);
  double v = doc["result"]["value"].get<double>();
  double ref = doc["reference"]["value"].get<double>();
  CHECK(std::abs(v - ref) / ref < 0.05);
}

TEST_CASE("cli: level-integral matches the attached exact reference") {
  auto r = run_cli(
      "level-integral --poly \"z1 z2\" --eps 0.1 --weight grad --samples 4e5 "
      "--seed 42 --sampling auto",
      "/tmp/lslab_lvl.json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  double v = doc["result"]["value"].get<double>();
  double se = doc["result"]["std_error"].get<double>();
  double ref = doc["reference"]["value"].get<double>();
  CHECK(ref == doctest::Approx(3.90837).epsilon(1e-5));
  CHECK(std::abs(v - ref) <= std::max(4.0 * se, 0.02 * ref));
}

TEST_CASE("cli: polynomial file input") {
  {
    std::ofstream f("/tmp/lslab_cusp.json");
    f << R"({"dimension":2,"terms":[{"exponents":[2,0],"coeff":[1,0]},{"exponents":[0,3],"coeff":[-1,0]}]})";
  }
  auto r = run_cli("eval --poly-file /tmp/lslab_cusp.json --point \"1,0;1,0\"",
                   "/tmp/lslab_file.json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["value"][0].get<double>() == 0.0);
}

TEST_CASE("cli: lojasiewicz report") {
  auto r = run_cli("lojasiewicz --poly \"z1^2 - z2^3\" --amax 6", "/tmp/lslab_loj.json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["alpha"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(0.03));
  CHECK(doc["result"]["gamma"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(0.05));
  CHECK(doc["result"]["tau"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(0.05));
  CHECK(doc["result"]["cse_lower"].get<double>() ==
        doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("cli: blowup demo") {
  auto r = run_cli("blowup-demo", "/tmp/lslab_blow.json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  for (const auto& chart : doc["result"]["charts"])
    CHECK(chart["max_residual"].get<double>() < 1e-12);
}

TEST_CASE("cli: validation failures exit with code 2") {
  auto bad_poly = run_cli("volume --poly \"z1^^\" --eps 0.1", "/tmp/lslab_err1.json");
  CHECK(bad_poly.exit_code == 2);
  json doc = json::parse(bad_poly.out);
  CHECK(doc["error"]["code"] == "PARSE_ERROR");

  auto constant = run_cli(
      R"(volume --poly "{\"dimension\":2,\"terms\":[]}" --eps 0.1)",
      "/tmp/lslab_err2.json");
  CHECK(constant.exit_code == 2);
  json doc2 = json::parse(constant.out);
  CHECK(doc2["error"]["code"] == "CONSTANT_POLY");
}

TEST_CASE("cli: inconclusive sobolev verdicts exit with code 3") {
  // decay ratio 2^-0.05 ~ 0.966 per annulus: too slow for the convergence
  // rule, too steady for the divergence rule
  auto r = run_cli(
      "sobolev --poly \"z1 z2\" --integrand grad_sq_inv_f_p --param 1.95 "
      "--j0 2 --j1 16 --samples 1e6 --seed 7",
      "/tmp/lslab_sob.json");
  CHECK(r.exit_code == 3);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["verdict"] == "INCONCLUSIVE");
}

TEST_CASE("cli: fit-exponent writes a descending CSV") {
  auto r = run_cli(
      "fit-exponent --poly \"z1\" --quantity area --k0 3 --k1 6 --samples 2e5 "
      "--seed 5 --csv /tmp/lslab_fit.csv --out /tmp/lslab_fit.json",
      "/tmp/lslab_fit_stdout.txt");
  REQUIRE(r.exit_code == 0);
  std::ifstream csv("/tmp/lslab_fit.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "eps,value,std_error");
  double prev = 1e9;
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    double eps = std::stod(line.substr(0, line.find(',')));
    CHECK(eps < prev);
    prev = eps;
    ++rows;
  }
  CHECK(rows == 4);
  std::ifstream jf("/tmp/lslab_fit.json");
  json doc = json::parse(jf);
  CHECK(doc["result"]["exponent"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("cli: reproduce --quick is byte-deterministic") {
  auto a = run_cli("reproduce --quick --workers 2 2>/dev/null", "/tmp/lslab_rep1.json");
  auto b = run_cli("reproduce --quick --workers 2 2>/dev/null", "/tmp/lslab_rep2.json");
  CHECK(a.out == b.out);
  CHECK(a.out.size() > 100);
  json doc = json::parse(a.out);
  CHECK(doc["criteria"].size() == 12);
}
