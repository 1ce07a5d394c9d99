#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace toric_ic;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TORIC_IC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fan_arg(const std::string& name) { return testing::corpus(name); }

// Writes `text` to a scratch file and returns its path.
std::string scratch(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "toric_ic_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("validate") {
  const Run p2 = run("validate " + fan_arg("p2"));
  CHECK(p2.code == 0);
  CHECK(p2.out.rfind("7 cones, complete\n", 0) == 0);
  CHECK(p2.out.find("dim 1: 3") != std::string::npos);
  const Run quad = run("validate " + fan_arg("quadrant"));
  CHECK(quad.code == 0);
  CHECK(quad.out.rfind("4 cones, not complete\n", 0) == 0);
  const Run json = run("validate --format json " + fan_arg("cube"));
  REQUIRE(json.code == 0);
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j.at("cones") == 27);
  CHECK(j.at("complete") == true);
  CHECK(j.at("by_dimension") == nlohmann::json::array({1, 8, 12, 6}));
}

TEST_CASE("load failures map to exit codes") {
  CHECK(run("validate " + scratch("broken.json", "{\"rank\": 2, \"rays\": [")).code == 2);
  CHECK(run("validate " + scratch("short.json", R"({"rank":2,"rays":[[1]],"maximal_cones":[[0]]})")).code == 2);
  CHECK(run("validate /nonexistent/fan.json").code == 2);
  const std::string overlap = R"({"rank":2,"rays":[[1,0],[0,1],[1,1]],"maximal_cones":[[0,1],[0,2]]})";
  CHECK(run("validate " + scratch("overlap.json", overlap)).code == 3);
  CHECK(run("validate " + scratch("fat.json", R"({"rank":1,"rays":[[2]],"maximal_cones":[[0]]})")).code == 3);
  CHECK(run("betti").code == 2);
  CHECK(run("frobnicate " + fan_arg("p1")).code == 2);
}

TEST_CASE("betti") {
  const Run p1 = run("betti " + fan_arg("p1"));
  CHECK(p1.code == 0);
  CHECK(p1.out == "1 0 1\n");
  CHECK(run("betti " + fan_arg("p1xp1")).out == "1 0 2 0 1\n");
  CHECK(run("betti " + fan_arg("cube")).out == "1 0 5 0 5 0 1\n");
  CHECK(run("betti " + fan_arg("point")).out == "1\n");
  CHECK(run("betti " + fan_arg("quadrant")).code == 4);
  CHECK(run("betti -p sideways " + fan_arg("p1")).code == 2);
  CHECK(run("betti -p top " + fan_arg("p2")).out == "1 0 1 0 1\n");
  const Run json = run("betti --format json " + fan_arg("p2"));
  REQUIRE(json.code == 0);
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j.at("betti") == nlohmann::json::array({1, 0, 1, 0, 1}));
  CHECK(j.at("duality").at("ok") == true);
}

TEST_CASE("gamma") {
  const Run t = run("gamma " + fan_arg("p1"));
  CHECK(t.code == 0);
  CHECK(t.out == "p q dim\n0 -1 1\n1 0 1\n");
  CHECK(run("gamma " + fan_arg("point")).out == "p q dim\n0 0 1\n");
  const Run quad = run("gamma " + fan_arg("quadrant"));
  CHECK(quad.code == 0);
  const Run json = run("gamma --format json " + fan_arg("p2"));
  REQUIRE(json.code == 0);
  const auto j = nlohmann::json::parse(json.out);
  const CohomTable table = io::table_from_json(j.at("gamma"));
  CHECK(io::table_to_json(table) == j.at("gamma"));
  CHECK(table == CohomTable{{{0, -2}, 1}, {{1, -1}, 1}, {{2, 0}, 1}});
  CHECK(j.at("hypercohomology") == true);
}

TEST_CASE("omega") {
  CHECK(run("omega -j 1 " + fan_arg("p1")).out == "1 0\n");
  CHECK(run("omega -j 0 " + fan_arg("p1")).out == "0 1\n");
  CHECK(run("omega -j 5 " + fan_arg("p1")).code == 2);
  CHECK(run("omega -j 0 " + fan_arg("quadrant")).code == 4);
}

TEST_CASE("duality") {
  CHECK(run("duality " + fan_arg("p2")).code == 0);
  CHECK(run("duality -p bottom " + fan_arg("cube")).code == 0);
  CHECK(run("duality " + fan_arg("quadrant")).code == 0);
}

TEST_CASE("perversity arguments") {
  const std::string file = scratch("perv.json", R"({"by_dimension":{"1":0,"2":1}})");
  CHECK(run("betti -p " + file + " " + fan_arg("p2")).code == 0);
  CHECK(run("betti -p '{\"name\":\"bottom\"}' " + fan_arg("p2")).out == "1 0 1 0 1\n");
  CHECK(run("betti -p '{\"by_dimension\":{\"1\":0}}' " + fan_arg("p2")).code == 2);
}

TEST_CASE("selfcheck") {
  const Run ok = run("selfcheck --seed 42 " + fan_arg("p2"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("PASS serre_duality") != std::string::npos);
  CHECK(run("selfcheck --seed 1 " + fan_arg("point")).code == 0);
  const Run bad = run("selfcheck --seed 42 --corrupt-builder " + fan_arg("p2"));
  CHECK(bad.code == 5);
  CHECK(bad.out.find("FAIL ic_conditions") != std::string::npos);
}

TEST_CASE("JSON output is reproducible") {
  for (const char* cmd : {"betti", "gamma", "selfcheck --seed 7"}) {
    const std::string args = std::string(cmd) + " --format json " + fan_arg("p1xp1");
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_NOTHROW(nlohmann::json::parse(a.out));
  }
}

TEST_CASE("corpus expected outputs") {
  const auto expected = io::parse_text(io::read_file(std::string(TORIC_IC_CORPUS) + "/expected.json"), "expected");
  for (const auto& [name, e] : expected.items()) {
    INFO(name);
    const Run v = run("validate --format json " + fan_arg(name));
    REQUIRE(v.code == 0);
    const auto census = nlohmann::json::parse(v.out);
    CHECK(census.at("cones") == e.at("cones"));
    CHECK(census.at("complete") == e.at("complete"));
    CHECK(census.at("by_dimension") == e.at("by_dimension"));
    if (!e.contains("betti")) continue;
    const Run b = run("betti --format json " + fan_arg(name));
    REQUIRE(b.code == 0);
    CHECK(nlohmann::json::parse(b.out).at("betti") == e.at("betti"));
    // Independent check of the expected file itself.
    std::vector<long> h = testing::generalized_h_vector(*testing::corpus_fan(name));
    CHECK(nlohmann::json(testing::interleave_zeros(h)) == e.at("betti"));
  }
}
