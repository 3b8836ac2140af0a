#include "rtc_cli/cli.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using rtc::cli::run_command;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return (std::filesystem::path(RTC_DATA_DIR) / rel).string(); }

}  // namespace

TEST_CASE("eval, jvp and vjp") {
  const std::string f = "(map 2 2 (* x0 x1) (+ x0 x1))";
  CHECK(run({"eval", f, "2,3"}).out == "(6,5)\n");
  CHECK(run({"jvp", f, "2,3", "1,0"}).out == "(3,1)\n");
  Run v = run({"vjp", f, "(2,3)", "(1,1)"});
  CHECK(v.code == 0);
  CHECK(v.out == "(4,3)\n");
  CHECK(run({"eval", data("maps/mul_add.map"), "0.5,4"}).out == "(2,4.5)\n");
}

TEST_CASE("etale on the double cover") {
  Run r = run({"etale", data("maps/double_cover.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "etale: true, min |det| = 2\n");
  Run c = run({"etale", data("maps/constant.json")});
  CHECK(c.code == 1);
  CHECK(c.out.rfind("etale: false, min |det| = 0\n", 0) == 0);
}

TEST_CASE("pullback-form of dtheta") {
  Run r = run({"pullback-form", data("maps/double_cover.json"), data("fields/dtheta.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("(map 1 1 2)") != std::string::npos);
  CHECK(r.out.find("section law: holds") != std::string::npos);
}

TEST_CASE("optimize on the sphere") {
  Run r = run({"optimize", data("maps/sphere_height.json"), data("atlases/sphere.json"),
               data("fields/sphere_euclidean_metric.json"), "--start", "north:0.05,0", "--stop-below", "-0.999999999"});
  CHECK(r.code == 0);
  CHECK(r.out.find("monotone: true") != std::string::npos);
  CHECK(r.out.find("final: south:") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == rtc::cli::kExitUsage);
  Run unknown = run({"frobnicate"});
  CHECK(unknown.code == rtc::cli::kExitUsage);
  CHECK(unknown.err == "error: unknown subcommand 'frobnicate'\n");
  CHECK(run({"eval", "(map 1 1 x0)"}).code == rtc::cli::kExitUsage);
  CHECK(run({"eval", "(map 1 1 x0)", "1,2"}).code == rtc::cli::kExitUsage);
  CHECK(run({"eval", "(map 1 1 x0)", "abc"}).code == rtc::cli::kExitUsage);
  CHECK(run({"check", "nonsense"}).code == rtc::cli::kExitUsage);
  CHECK(run({"eval", data("missing.map"), "1"}).code == rtc::cli::kExitIo);
  CHECK(run({"etale", data("missing.json")}).code == rtc::cli::kExitIo);
  CHECK(run({"report", "--json", "/nonexistent-dir/r.json", "--suite", "smooth"}).code == rtc::cli::kExitIo);
  // a failing law: tolerance below rounding error
  CHECK(run({"check", "reverse", "--tol", "0"}).code == rtc::cli::kExitCheckFailed);
}

TEST_CASE("artifact errors name the problem") {
  Run bad = run({"etale", data("invalid/bad_arity_map.json")});
  CHECK(bad.code == rtc::cli::kExitUsage);
  CHECK(bad.err.find("dimension mismatch") != std::string::npos);
  Run atlas = run({"pullback-form", data("maps/double_cover.json"), data("invalid/bad_field.json")});
  CHECK(atlas.err.find("overlap-compatibility") != std::string::npos);
}

TEST_CASE("check is deterministic") {
  Run a = run({"check", "all", "--seed", "42"});
  Run b = run({"check", "all", "--seed", "42"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("report writes schema 1 JSON sorted by id") {
  auto path = std::filesystem::temp_directory_path() / "rtc_cli_report_test.json";
  Run r = run({"report", "--json", path.string(), "--suite", "smooth", "--seed", "7"});
  CHECK(r.code == 0);
  std::ifstream in(path);
  auto doc = nlohmann::json::parse(in);
  CHECK(doc["schema"] == 1);
  CHECK(doc["seed"] == 7);
  std::vector<std::string> ids;
  for (const auto& law : doc["laws"]) ids.push_back(law["id"]);
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  std::filesystem::remove(path);
}

TEST_CASE("number formatting") {
  CHECK(rtc::cli::format_number(2.0) == "2");
  CHECK(rtc::cli::format_number(-0.0) == "0");
  CHECK(rtc::cli::format_number(0.1) == "0.1");
  CHECK(rtc::cli::format_vector({1.5, -3}) == "(1.5,-3)");
}
