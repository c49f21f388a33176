#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "symcap/cli.hpp"
#include "symcap/io.hpp"

using namespace symcap;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "symcap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  const char* dir = std::getenv("SYMCAP_TEST_DATA");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

}  // namespace

TEST_CASE("capacity of a ball") {
  const auto r = run({"capacity", "--region", R"({"variant":"Ball","R":1})"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(M_PI));
  CHECK(j["exact"] == true);
  const auto f = run({"capacity", "--region", "@" + data("ball.json"), "--scale", "0.5"});
  CHECK(f.code == 0);
  CHECK(Json::parse(f.out)["value"].get<double>() == doctest::Approx(M_PI));
  const auto inc = run({"capacity", "--region", R"({"variant":"Ball","R":1,"n":2})", "--inside",
                        R"({"variant":"Cylinder","j":1,"R":0.5,"n":2})"});
  CHECK(inc.code == 0);
  CHECK(Json::parse(inc.out)["included"] == false);
}

TEST_CASE("squeeze batch") {
  const auto r = run({"squeeze", "--n", "3", "--trials", "1000", "--seed", "42"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["violations"] == 0);
  CHECK(j["trials"] == 1000);
  CHECK(j["min_ratio"].get<double>() >= 1.0 - 1e-9);
  CHECK(run({"squeeze", "--n", "3", "--trials", "1000", "--seed", "42"}).out == r.out);
  CHECK(run({"squeeze", "--n", "3", "--trials", "1000", "--seed", "43"}).out != r.out);
}

TEST_CASE("squeeze of a given matrix") {
  const auto r = run({"--samples", "200000", "squeeze", "--matrix",
                      R"({"n":2,"rows":[[1,0,0,0],[0,1,0,0],[0,1,1,0],[1,0,0,1]]})"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  const auto& p = j["planes"][0];
  CHECK(p["projection_area"].get<double>() == doctest::Approx(std::sqrt(2.0) * M_PI));
  CHECK(p["intersection_area"].get<double>() == doctest::Approx(M_PI / std::sqrt(2.0)));
  CHECK(p["mc_projection_area"].get<double>() == doctest::Approx(std::sqrt(2.0) * M_PI).epsilon(0.02));
  const auto bad = run({"squeeze", "--matrix", R"({"n":1,"rows":[[2,0],[0,1]]})"});
  CHECK(bad.code == 2);
}

TEST_CASE("ebk levels") {
  const auto r = run({"ebk", "--K", "oscillator:1,2", "--maslov", "2,2", "--Nmax", "1"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  REQUIRE(j["entries"].size() == 4);
  const double expected[] = {1.5, 2.5, 3.5, 4.5};
  for (int i = 0; i < 4; ++i) CHECK(j["entries"][i]["energy"].get<double>() == doctest::Approx(expected[i]));
  CHECK(j["energy_violations"] == 0);

  const auto csv = run({"--format", "csv", "ebk", "--K", "power:2", "--maslov", "2", "--Nmax", "2"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("N1,I1,R1,energy,capacity,satisfied\n", 0) == 0);

  const auto odd = run({"ebk", "--K", "oscillator:1", "--maslov", "3", "--Nmax", "1"});
  CHECK(odd.code == 0);
  CHECK(odd.err.find("warning") != std::string::npos);

  const auto tab = run({"ebk", "--K", "table:" + data("table.txt"), "--maslov", "2", "--Nmax", "2"});
  CHECK(tab.code == 0);
  CHECK(Json::parse(tab.out)["entries"][2]["energy"].get<double>() == doctest::Approx(2.5));
  CHECK(run({"ebk", "--K", "table:" + data("table.txt"), "--maslov", "2", "--Nmax", "5"}).code == 2);
  CHECK(run({"ebk", "--K", "oscillator:1", "--maslov", "0", "--Nmax", "1"}).code == 2);
  CHECK(run({"ebk", "--K", "wobble:1", "--maslov", "2", "--Nmax", "1"}).code == 2);
  CHECK(run({"ebk", "--K", "oscillator:1,2", "--maslov", "2", "--Nmax", "1"}).code == 2);
}

TEST_CASE("parse_k_spec") {
  const std::vector<double> one{1.0};
  CHECK(parse_k_spec("oscillator:2", 1)(one) == 2.0);
  CHECK(parse_k_spec("power:3", 1)(std::vector<double>{2.0}) == doctest::Approx(8.0));
  CHECK_THROWS(parse_k_spec("oscillator", 1));
  CHECK_THROWS(parse_k_spec("power:1,2", 1));
  CHECK_THROWS(parse_k_spec("table:/nonexistent/file", 1));
}

TEST_CASE("global options and environment") {
  const std::vector<std::string> args{"ebk", "--K", "oscillator:1", "--maslov", "2", "--Nmax", "0"};
  CHECK(Json::parse(run(args).out)["entries"][0]["energy"] == 0.5);
  ::setenv("SYMCAP_HBAR", "2", 1);
  CHECK(Json::parse(run(args).out)["entries"][0]["energy"] == 1.0);
  auto flagged = args;
  flagged.insert(flagged.begin(), {"--hbar", "4"});
  CHECK(Json::parse(run(flagged).out)["entries"][0]["energy"] == 2.0);
  ::unsetenv("SYMCAP_HBAR");
  CHECK(run({"--hbar", "-1", "ebk", "--K", "oscillator:1", "--maslov", "2", "--Nmax", "0"}).code == 2);
  CHECK(run({"--format", "xml", "ebk", "--K", "oscillator:1", "--maslov", "2", "--Nmax", "0"}).code == 2);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "symcap_cli_test.json";
  std::filesystem::remove(path);
  const auto r = run({"--out", path.string(), "capacity", "--region", R"({"variant":"SolidTorus","radii":[1,2]})"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(Json::parse(in)["value"].get<double>() == doctest::Approx(M_PI));
  std::filesystem::remove(path);
}

TEST_CASE("spectrum, maslov and flow") {
  const auto s = run({"spectrum", "--hessian", R"({"n":1,"rows":[[4,0],[0,1]]})"});
  CHECK(s.code == 0);
  CHECK(Json::parse(s.out)["spectrum"]["mu"][0].get<double>() == doctest::Approx(2.0));

  const auto m = run({"maslov", "--torus", "1,2", "--cycle", "2"});
  CHECK(m.code == 0);
  CHECK(Json::parse(m.out)["index"] == 2);
  CHECK(run({"maslov"}).code == 2);
  CHECK(run({"maslov", "--torus", "1,2", "--cycle", "3"}).code == 2);

  const auto f = run({"flow", "--hessian", R"({"n":1,"rows":[[1,0],[0,1]]})", "--z0", "1,0", "--t", "3.141592653589793",
                      "--steps", "4"});
  CHECK(f.code == 0);
  const Json j = Json::parse(f.out);
  CHECK(j["drift"].get<double>() < 1e-12);
  const auto& last = j["trajectory"].back()["z"];
  CHECK(last[0].get<double>() == doctest::Approx(-1.0));
  CHECK(std::abs(last[1].get<double>()) < 1e-12);
  const auto csv = run({"--format", "csv", "flow", "--hessian", R"({"n":1,"rows":[[1,0],[0,1]]})", "--z0", "1,0"});
  CHECK(csv.out.rfind("t,x1,p1,energy\n", 0) == 0);
}

TEST_CASE("bad invocations") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"capacity"}).code == 2);
  CHECK(run({"capacity", "--region", "{not json"}).code == 2);
  CHECK(run({"capacity", "--region", "@/nonexistent.json"}).code == 2);
  const auto e = run({"capacity", "--region", R"({"variant":"Ball","R":-2})"});
  CHECK(e.code == 2);
  CHECK(e.err.find("error") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("selftest") {
  const auto a = run({"selftest", "--only", "3"});
  CHECK(a.code == 0);
  CHECK(run({"selftest", "--only", "3"}).out == a.out);
  const Json j = Json::parse(a.out);
  REQUIRE(j["criteria"].size() == 1);
  CHECK(j["criteria"][0]["passed"] == true);
  CHECK(run({"--tol", "1e-18", "selftest", "--only", "5"}).code == 1);
  const auto csv = run({"--format", "csv", "selftest", "--only", "2"});
  CHECK(csv.out.rfind("id,name,passed,detail\n", 0) == 0);
}
