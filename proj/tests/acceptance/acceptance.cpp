#include "rtc/standard_manifolds.hpp"
#include "rtc/suites.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <sys/wait.h>

using namespace rtc;

namespace {

constexpr double kForwardTol = 1e-9;
constexpr double kAdjointTol = 1e-10;
constexpr double kChainRuleTol = 1e-9;
constexpr double kPairingTol = 1e-10;
constexpr double kPullbackTol = 1e-12;
constexpr double kEtaleTol = 1e-12;
constexpr double kOptimizerTarget = 1e-6;
constexpr std::size_t kMinPoints = 50;
constexpr double kForwardSeconds = 60;
constexpr double kReverseSeconds = 60;
constexpr double kAlgebraSeconds = 120;
constexpr std::size_t kOptimizerIters = 500;
constexpr double kOptimizerStep = 0.1;

struct Verdict {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& reason) {
    if (!cond && ok) {
      ok = false;
      why = reason;
    }
  }
};

const LawResult* find(const CheckReport& r, const std::string& id) {
  for (const auto& law : r.laws) {
    if (law.id == id) return &law;
  }
  return nullptr;
}

void require_law(Verdict& v, const CheckReport& r, const std::string& id, double tol) {
  const LawResult* law = find(r, id);
  v.require(law != nullptr, id + " missing");
  if (!law) return;
  v.require(law->passed, id + " failed: " + law->detail);
  v.require(law->exact || law->tolerance <= tol, id + " tolerance looser than pinned");
  v.require(law->exact || law->points >= kMinPoints, id + " sampled fewer than 50 points");
}

void require_exact(Verdict& v, const CheckReport& r, const std::string& id) {
  const LawResult* law = find(r, id);
  v.require(law != nullptr, id + " missing");
  if (law) v.require(law->passed && law->exact, id + " is not an exact pass");
}

void require_all_pass(Verdict& v, const CheckReport& r) {
  v.require(r.passed(), std::to_string(r.failures()) + " failing laws in " + r.suite);
}

std::pair<CheckReport, double> timed(const std::string& suite) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r = run_suite(suite, {.seed = 42});
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(r), s};
}

Verdict forward_suite() {
  Verdict v;
  auto [r, s] = timed("forward");
  require_all_pass(v, r);
  for (const char* id : {"forward:functoriality", "forward:natural-p", "forward:natural-z", "forward:natural-s",
                         "forward:natural-lift", "forward:natural-flip"}) {
    require_law(v, r, id, kForwardTol);
  }
  require_exact(v, r, "forward:lift-flip");
  require_exact(v, r, "forward:flip-involution");
  for (const auto& law : r.laws) {
    if (law.id.rfind("forward:bundle:", 0) == 0) v.require(law.passed && law.exact, law.id);
  }
  v.require(s < kForwardSeconds, "took " + std::to_string(s) + " s");
  return v;
}

Verdict reverse_suite() {
  Verdict v;
  auto [r, s] = timed("reverse");
  require_all_pass(v, r);
  require_law(v, r, "reverse:adjoint", kAdjointTol);
  require_law(v, r, "reverse:chain-rule", kChainRuleTol);
  require_law(v, r, "reverse:dagger-involution", kChainRuleTol);
  require_law(v, r, "reverse:crdc-from-involution", kChainRuleTol);
  v.require(s < kReverseSeconds, "took " + std::to_string(s) + " s");
  return v;
}

Verdict fibration_suite() {
  Verdict v;
  auto [r, s] = timed("bundles");
  (void)s;
  require_all_pass(v, r);
  for (const char* id : {"bundles:dual-unit-left", "bundles:dual-unit-right", "bundles:dual-assoc",
                         "bundles:pullback:cartesian-linear", "bundles:pullback:factorization", "bundles:double-dual"}) {
    require_law(v, r, id, kForwardTol);
  }
  require_exact(v, r, "bundles:pullback:factorization-unique");
  require_exact(v, r, "bundles:cartesian-inverse");
  require_exact(v, r, "bundles:cstar-triangle");
  return v;
}

Verdict manifold_suite() {
  Verdict v;
  auto [r, s] = timed("manifold");
  (void)s;
  require_all_pass(v, r);
  for (const char* atlas : {"circle", "sphere", "torus"}) {
    std::string id = std::string("manifold:atlas:") + atlas + ":cocycle:round-trip";
    v.require(find(r, id) && find(r, id)->passed, id);
  }
  require_law(v, r, "manifold:duality-pairing", kPairingTol);
  require_law(v, r, "manifold:dtheta-pullback", kPullbackTol);
  require_law(v, r, "manifold:etale-functoriality", kEtaleTol);
  require_exact(v, r, "manifold:section-law");
  return v;
}

Verdict algebra_suite() {
  Verdict v;
  auto [r, s] = timed("algebra");
  require_all_pass(v, r);
  for (const auto& law : r.laws) v.require(law.exact, law.id + " is not exact");
  v.require(s < kAlgebraSeconds, "took " + std::to_string(s) + " s");
  return v;
}

Verdict optimizer_demo() {
  Verdict v;
  SphereDescentDemo demo = sphere_descent_demo(kOptimizerStep, kOptimizerIters, kOptimizerTarget);
  v.require(demo.distance < kOptimizerTarget, "distance " + std::to_string(demo.distance));
  v.require(demo.descent.iterations <= kOptimizerIters, "too many steps");
  v.require(demo.descent.monotone, "objective increased");
  return v;
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Verdict cli_determinism() {
  Verdict v;
  std::string cmd = std::string("\"") + RTC_TOOL_PATH + "\" check all --seed 42";
  auto [c1, o1] = capture(cmd);
  auto [c2, o2] = capture(cmd);
  v.require(c1 == 0 && c2 == 0, "exit codes " + std::to_string(c1) + ", " + std::to_string(c2));
  v.require(!o1.empty(), "no output");
  v.require(o1 == o2, "outputs differ");
  return v;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"forward-suite", forward_suite},       {"reverse-suite", reverse_suite},   {"fibration-suite", fibration_suite},
      {"manifold-suite", manifold_suite},     {"algebra-suite", algebra_suite},   {"optimizer-demo", optimizer_demo},
      {"cli-determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.why = e.what();
    }
    std::cout << (v.ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first;
    if (!v.ok) std::cout << ": " << v.why;
    std::cout << "\n";
    failed += !v.ok;
  }
  return failed == 0 ? 0 : 1;
}
