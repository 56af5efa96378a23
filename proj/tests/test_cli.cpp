#include "cli_app.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = dualspace::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

void check_schema(const json& doc) {
  for (const char* key : {"space", "method", "result", "residuals", "seed", "version"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc.size() == 6);
}

}  // namespace

TEST_CASE("lattice-info") {
  Run r = run({"lattice-info", "gr-real", "2", "3"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  check_schema(doc);
  CHECK(doc["result"]["orthonormal"] == true);
  CHECK(doc["result"]["generator_norms"][0].get<double>() == doctest::Approx(std::numbers::pi));

  doc = json::parse(run({"lattice-info", "su3"}).out);
  CHECK(doc["result"]["orthonormal"] == false);
  doc = json::parse(run({"lattice-info", "--space", "gr-complex", "-n", "1", "-m", "1"}).out);
  CHECK(doc["result"]["rank"] == 1);
}

TEST_CASE("exit codes") {
  CHECK(run({"lattice-info", "nope", "1", "1"}).code == 2);
  CHECK(run({"lattice-info", "gr-real"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"embed", "gr-real", "1", "1", "--input", "-"}, "[[1.5]]").code == 3);
  CHECK(run({"embed", "gr-real", "2", "1"}).code == 3);
  CHECK(run({"embed", "gr-real", "1", "1", "--input", "-"}, "[[1 - 1e-15]]").code == 2);
  CHECK(run({"embed", "gr-real", "1", "1", "--input", "-"}, "0.999999999999999").code == 4);
  CHECK(run({"embed", "gr-real", "1", "1", "--input", "-"}, "[[\"x\"]]").code == 2);
  CHECK(run({"embed", "gr-real", "1", "1", "--input", "-"}, "[[0.1+0.2i]]").code == 2);
  CHECK(run({"cutlocus-grid", "gr-real", "4", "4"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("embed: all methods agree on Gr(1,1) at Y = tanh 1") {
  const Run r = run({"embed", "gr-real", "1", "1", "--input", "-"}, "[[0.7615941559557649]]");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  check_schema(doc);
  for (const auto& [pair, d] : doc["residuals"].items()) CHECK(d.get<double>() < 1e-9);
  CHECK(doc["result"]["noncompact_length"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("embed: b on the sphere at t = 1") {
  const Run r = run({"embed", "sphere", "1", "2", "--method", "b", "--t", "1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const json& b = doc["result"]["embeddings"]["b"];
  CHECK(b["b_angle"].get<double>() == doctest::Approx(0.86576948323966).epsilon(1e-12));
  CHECK(b["flat_length"].get<double>() == doctest::Approx(0.86576948323966).epsilon(1e-12));
  CHECK(b["space_like"] == true);
}

TEST_CASE("embed: CSV and complex input, identity group element") {
  Run r = run({"embed", "gr-complex", "1", "2", "--input", "-"}, "0.1+0.2i\n-0.3i\n");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["input_group_element"][0][0].is_array());

  r = run({"embed", "gr-complex", "1", "1", "--input", "-"}, "[[[0.1, 0.2]]]");
  REQUIRE(r.code == 0);

  r = run({"embed", "gr-real", "1", "2", "--input-kind", "group", "--input", "-"},
          "1,0,0\n0,1,0\n0,0,1\n");
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  for (const char* m : {"p", "g", "f"}) {
    CHECK(doc["result"]["embeddings"][m]["region_fraction"].get<double>() == 0.0);
  }
}

TEST_CASE("cut-radius and the SU(3) counterexample") {
  Run r = run({"cut-radius", "gr-real", "2", "2", "--direction", "1,1"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["radius"].get<double>() ==
        doctest::Approx(std::numbers::pi / std::sqrt(2.0)));
  CHECK(doc["result"]["closed_form_used"] == true);

  r = run({"cut-radius", "su3", "--direction", "0,1"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(doc["result"]["closed_form_used"] == false);
  CHECK(std::abs(doc["residuals"]["naive_radius"].get<double>() -
                 doc["result"]["radius"].get<double>()) > 0.1);
  CHECK(run({"cut-radius", "su3", "--direction", "1,2,3"}).code == 2);
}

TEST_CASE("cutlocus-grid rows follow the closed form") {
  const Run r = run({"cutlocus-grid", "gr-real", "2", "3", "--samples", "36"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "theta,x1,x2,radius");
  int rows = 0;
  while (std::getline(lines, line)) {
    double th, x1, x2, radius;
    char c;
    std::istringstream cells(line);
    cells >> th >> c >> x1 >> c >> x2 >> c >> radius;
    CHECK(radius == doctest::Approx(std::numbers::pi / (2 * std::max(std::abs(x1), std::abs(x2)))));
    ++rows;
  }
  CHECK(rows == 36);

  const Run one = run({"cutlocus-grid", "gr-real", "1", "3", "--samples", "4"});
  CHECK(one.out.find("1.5707963267948966\n") != std::string::npos);
}

TEST_CASE("verify reports and exit status") {
  Run r = run({"verify", "gr-real", "2", "3", "--property", "triple", "--samples", "20"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  check_schema(doc);
  CHECK(doc["result"]["passed"] == true);
  CHECK(doc["residuals"][0]["samples"] == 20);

  r = run({"verify", "sphere", "1", "2", "--property", "triple", "--samples", "5"});
  CHECK(r.code == 1);

  r = run({"verify", "--property", "trig", "--samples", "10"});
  CHECK(r.code == 0);
  doc = json::parse(r.out);
  CHECK(doc["residuals"][0]["details"].contains("worst_hyperbolic_printed_sign"));

  CHECK(run({"verify", "gr-real", "1", "1", "--tol", "-1"}).code == 2);
  CHECK(run({"verify", "gr-real", "1", "1", "--property", "bogus"}).code == 2);
}

TEST_CASE("same seed gives byte-identical output; DUALSPACE_SEED overrides the default") {
  const std::vector<std::string> args{"verify", "gr-complex", "1", "2", "--property",
                                      "equivariance", "--samples", "10"};
  const Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["seed"] == 0x5EED);

  setenv("DUALSPACE_SEED", "0x10", 1);
  const Run c = run(args);
  unsetenv("DUALSPACE_SEED");
  CHECK(json::parse(c.out)["seed"] == 16);
  CHECK(c.out != a.out);

  std::vector<std::string> flagged = args;
  flagged.insert(flagged.end(), {"--seed", "16"});
  setenv("DUALSPACE_SEED", "99", 1);
  const Run d = run(flagged);
  unsetenv("DUALSPACE_SEED");
  CHECK(d.out == c.out);
  CHECK(run({"lattice-info", "gr-real", "1", "1", "--seed", "zz"}).code == 2);
}
