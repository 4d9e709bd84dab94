#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lagsg/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lagsg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Error records are exactly one JSON line with the exit code repeated.
void check_error_record(const Result& r, int code) {
  CHECK(r.code == code);
  REQUIRE(!r.err.empty());
  CHECK(r.err.back() == '\n');
  CHECK(r.err.find('\n') == r.err.size() - 1);
  const json e = json::parse(r.err);
  CHECK(e.contains("error"));
  CHECK(e.contains("message"));
  CHECK(e.at("exit_code") == code);
}

std::string last_line(const std::string& s) {
  const auto end = s.find_last_not_of('\n');
  const auto start = s.rfind('\n', end);
  return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

TEST_CASE("classify labels") {
  auto r = run({"classify", "--point", "0,0,1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("label") == "hyperbolic");
  CHECK(j.at("signature").at("positive") == 1);
  CHECK(j.at("signature").at("negative") == 2);

  r = run({"classify", "--point", "0,0,0"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("label") == "parabolic");

  r = run({"classify", "--point", "0.3,-1,0.2", "--chart", "P", "--potential", "x^2 + y^2 + z^2 + x*y"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("label") == "elliptic");

  // config supplies the point, the flag wins
  r = run({"classify", "--config-json", R"({"point":[0,0,0]})", "--point", "0,0,1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("label") == "hyperbolic");
}

TEST_CASE("classify grid csv") {
  const auto r = run({"classify", "--config-json",
                      R"({"grid":{"x":{"min":0,"max":0,"n":1},"y":{"min":0,"max":0,"n":1},"Z":{"min":-1,"max":1,"n":3}}})"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "x,y,Z,positive,negative,zero,label\n"
        "0,0,-1,3,0,0,elliptic\n"
        "0,0,0,1,0,2,parabolic\n"
        "0,0,1,1,2,0,hyperbolic\n");
}

TEST_CASE("config errors exit 2") {
  check_error_record(run({"classify", "--config-json", "{not json"}), 2);
  check_error_record(run({"classify", "--config-json", R"({"point":[0,0,1],"colour":3})"}), 2);
  check_error_record(run({"classify", "--point", "0,0"}), 2);
  check_error_record(run({"classify", "--point", "0,0,1", "--tol", "-1"}), 2);
  check_error_record(run({"classify", "--config", "/nonexistent/cfg.json"}), 2);
  check_error_record(run({"trace", "--config-json", R"({"q":[0,0,1],"p":"north"})"}), 2);
  check_error_record(run({"trace", "--q", "0,0,1"}), 2);
  check_error_record(run({"nonsense"}), 2);
  check_error_record(run({}), 2);
  check_error_record(run({"classify", "--point", "0,0,1", "--potential", "x^^2"}), 2);
  check_error_record(run({"classify", "--point", "0,0,1", "--eps-q", "-1"}), 2);
  check_error_record(run({"caustic", "--config-json", R"({"first":{"min":1,"max":0,"n":4}})"}), 2);
}

TEST_CASE("config file and flag override") {
  const std::string path = "test_cli_cfg.json";
  {
    std::ofstream f(path);
    f << R"({"generating_function":{"chart":"P","potential":"x^2 + y^2 - z^2"},"point":[1,2,3]})";
  }
  auto r = run({"classify", "--config", path});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("label") != "elliptic");
  r = run({"classify", "--config", path, "--potential", "x^2 + y^2 + z^2"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("label") == "elliptic");
  std::remove(path.c_str());
}

TEST_CASE("trace subcommand") {
  // null start at Z = 1 with p2 = 1 runs into Z = 0
  auto r = run({"trace", "--config-json", R"({"q":[0.5,0,1],"null_complete":{"fixed":[0,1]},"max_steps":100000})"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("s,q1,q2,q3,p1,p2,p3,H,det_h,xdot_Z,ydot\n", 0) == 0);
  CHECK(last_line(r.out) == "# termination: ParabolicBoundary");

  // p = 0 is a fixed point
  r = run({"trace", "--q", "0.5,0,1", "--p", "0,0,0", "--max-steps", "3"});
  REQUIRE(r.code == 0);
  CHECK(last_line(r.out) == "# termination: MaxSteps");

  // not null
  check_error_record(run({"trace", "--q", "1,0,1", "--p", "0,1,0"}), 3);
  check_error_record(run({"trace", "--q", "0.5,0,1", "--p", "0,0,0", "--step", "0"}), 2);
}

TEST_CASE("verify-paper list and perturb") {
  auto r = run({"verify-paper", "--list"});
  REQUIRE(r.code == 0);
  const json list = json::parse(r.out);
  REQUIRE(list.size() == 12);
  for (int i = 0; i < 12; ++i) CHECK(list[i].at("id") == i + 1);

  r = run({"verify-paper", "--perturb", "--only", "1"});
  CHECK(r.code == 1);
  const json rep = json::parse(r.out);
  CHECK(rep.at("perturbed") == true);
  CHECK(rep.at("passed") == false);
  CHECK(rep.at("criteria").at(0).at("passed") == false);

  r = run({"verify-paper", "--only", "1,4"});
  CHECK(r.code == 0);
  check_error_record(run({"verify-paper", "--only", "14"}), 2);
}

TEST_CASE("verify-paper default run") {
  // Everything passes except the family degree claim (see README).
  const auto r = run({"verify-paper"});
  CHECK(r.code == 1);
  const json rep = json::parse(r.out);
  std::vector<int> failed;
  for (const auto& c : rep.at("criteria"))
    if (!c.at("passed").get<bool>()) failed.push_back(c.at("id").get<int>());
  CHECK(failed == std::vector<int>{10});
}

TEST_CASE("thin wrappers") {
  auto r = run({"residual", "--point", "1,2,3"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("residual") == "0");
  CHECK(j.at("value") == 0.0);

  r = run({"singular", "--point", "1,0,1"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("locus") == "-Z");
  CHECK(j.at("det_dpi") == -1.0);

  r = run({"family"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("degrees").at("T2") == 1);
  CHECK(j.at("degrees").at("T0") == 3);
  CHECK(j.at("degrees").at("T3").is_null());

  r = run({"family", "--derive"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("identities").size() == 10);
  CHECK(j.at("transcription_mismatches").size() == 1);

  check_error_record(run({"family", "--config-json", R"({"spec":{"T3":{"111":"Z^2"}}})"}), 2);

  r = run({"fiber", "--base", "2,0,0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\n") != std::string::npos);

  r = run({"caustic", "--config-json",
           R"({"free_vars":[0,1],"first":{"min":-1,"max":1,"n":3},"second":{"min":-1,"max":1,"n":3}})"});
  REQUIRE(r.code == 0);

  r = run({"wind", "--config-json",
           R"({"section":{"first":{"min":2,"max":2,"n":1},"second":{"min":0,"max":0,"n":1}}})"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "x,y,z,domain_flag,P,M,N,theta_eps,u_g,v_g,u,v,w,|v|\n"
        "2,0,0,in,2.6666666666666665,4,0,-2,0,2,0,2,0,2\n");
}

TEST_CASE("byte-identical reruns") {
  const std::vector<std::vector<std::string>> cmds{
      {"classify", "--point", "0.25,-0.5,0.75"},
      {"trace", "--config-json", R"({"q":[0.5,0,1],"null_complete":{"fixed":[0.3,1]},"max_steps":500})"},
      {"caustic"},
      {"wind"},
      {"verify-paper", "--only", "2,6"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("floats use the fixed 17-digit pattern") {
  const auto r = run({"classify", "--point", "0,0,0.1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"point\":[0,0,0.10000000000000001]") != std::string::npos);
}

TEST_CASE("output to file") {
  const std::string path = "test_cli_out.json";
  const auto r = run({"classify", "--point", "0,0,1", "-o", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(json::parse(ss.str()).at("label") == "hyperbolic");
  std::remove(path.c_str());
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify-paper") != std::string::npos);
}
