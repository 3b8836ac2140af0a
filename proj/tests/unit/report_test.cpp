#include "rtc/errors.hpp"
#include "rtc/report.hpp"
#include "rtc/suites.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <algorithm>

using namespace rtc;

TEST_CASE("reports sort laws and reject duplicates") {
  CheckReport r;
  r.suite = "demo";
  r.seed = 3;
  r.laws.push_back(LawResult{"b", "", true});
  r.laws.push_back(LawResult{"a", "", false});
  r.finalize();
  CHECK(r.laws.front().id == "a");
  CHECK_FALSE(r.passed());
  CHECK(r.failures() == 1);

  r.laws.push_back(LawResult{"a", "", true});
  CHECK_THROWS_AS(r.finalize(), InvariantViolation);
}

TEST_CASE("JSON report shape") {
  CheckReport r;
  r.suite = "demo";
  r.seed = 9;
  r.laws.push_back(LawResult{"x", "anchor", true});
  r.finalize();
  auto doc = nlohmann::json::parse(r.to_json());
  CHECK(doc["schema"] == kReportSchema);
  CHECK(doc["seed"] == 9);
  CHECK(doc["laws"][0]["status"] == "pass");
  CHECK(doc["laws"][0]["seed"] == 9);
}

TEST_CASE("suites are deterministic and pass") {
  for (const char* name : {"smooth", "reverse", "algebra"}) {
    CheckReport a = run_suite(name, {.seed = 42});
    CheckReport b = run_suite(name, {.seed = 42});
    CHECK_MESSAGE(a.passed(), a.to_text());
    CHECK(a.to_json() == b.to_json());
    CHECK(std::is_sorted(a.laws.begin(), a.laws.end(), [](const auto& x, const auto& y) { return x.id < y.id; }));
  }
  CHECK_THROWS_AS(run_suite("nonsense"), DomainError);
}
