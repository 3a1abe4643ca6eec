// Acceptance gate: one PASS/FAIL line per criterion. The optional argument is
// the path of the stepanov CLI, used by the determinism criterion.

#include <chrono>
#include <cstdio>
#include <sys/wait.h>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stepanov/harness.hpp"

using namespace stepanov;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_ms;  // 0 means unbounded
  std::function<Outcome()> run;
};

// Checks of a report whose names contain (or do not contain) a marker.
Outcome select(const harness::VerificationReport& r, const std::function<bool(const std::string&)>& keep) {
  std::size_t total = 0, failed = 0;
  std::string first;
  for (const auto& c : r.checks) {
    if (!keep(c.name)) continue;
    ++total;
    if (!c.pass) {
      ++failed;
      if (first.empty()) first = c.name;
    }
  }
  Outcome o;
  o.pass = total > 0 && failed == 0;
  o.detail = std::to_string(total - failed) + "/" + std::to_string(total) + " checks";
  if (!first.empty()) o.detail += ", first failure: " + first;
  if (total == 0) o.detail = "no matching checks";
  return o;
}

Outcome whole(const harness::VerificationReport& r) {
  return select(r, [](const std::string&) { return true; });
}

bool has(const std::string& s, const char* needle) { return s.find(needle) != std::string::npos; }

struct Captured {
  int status = -1;
  std::string out;
};

Captured run_command(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) c.out.append(buf, n);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

json strip_timing(json j) {
  j.erase("timing");
  if (j.contains("reports"))
    for (auto& r : j["reports"]) r.erase("timing");
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  // The algebra suite serves two criteria; run it once per criterion so each
  // runtime is measured on its own.
  const std::vector<Criterion> criteria{
      {1, "operator identities are bitwise exact on the 100-instance corpus", 10000.0,
       [] {
         return select(harness::run_suite("bochner-algebra", kSeed),
                       [](const std::string& n) { return !has(n, "sandwich") && !has(n, "spike"); });
       }},
      {2, "norm sandwich at p = 1, 2, 3 with a ratio >= 1.2 witness", 0.0,
       [] {
         return select(harness::run_suite("bochner-algebra", kSeed),
                       [](const std::string& n) { return has(n, "sandwich") || has(n, "spike"); });
       }},
      {3, "four-window domination on 500 random draws", 10000.0,
       [] { return whole(harness::run_suite("window-domination", kSeed)); }},
      {4, "greedy UI modulus equals subset enumeration within 1e-12", 0.0,
       [] { return whole(harness::run_suite("ui-exactness", kSeed)); }},
      {5, "Tchebychev bound and spike-family convergence in measure", 0.0,
       [] { return whole(harness::run_suite("measure-convergence", kSeed)); }},
      {6, "exp-oscillation example: growth, quotients, probe, K-bound", 30000.0,
       [] { return whole(harness::run_suite("exp-oscillation-example", kSeed)); }},
      {7, "Lipschitz operator increments under Hoelder triples", 0.0,
       [] { return whole(harness::run_suite("lipschitz-holder-bound", kSeed)); }},
      {8, "almost-period certificates, monotonicity and transfer", 0.0,
       [] { return whole(harness::run_suite("certificates", kSeed)); }},
      {9, "verify all --seed 42 twice gives identical reports and exit 0", 0.0,
       [&cli] {
         Outcome o;
         if (cli.empty()) {
           o.detail = "CLI path not given";
           return o;
         }
         const std::string cmd = "\"" + cli + "\" verify all --seed 42 2>/dev/null";
         const auto a = run_command(cmd);
         const auto b = run_command(cmd);
         if (a.status != 0 || b.status != 0) {
           o.detail = "exit codes " + std::to_string(a.status) + ", " + std::to_string(b.status);
           return o;
         }
         try {
           const bool same = strip_timing(json::parse(a.out)) == strip_timing(json::parse(b.out));
           o.pass = same;
           o.detail = same ? "identical after removing timing" : "reports differ";
         } catch (const std::exception& e) {
           o.detail = std::string("unparseable report: ") + e.what();
         }
         return o;
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_ms > 0.0 && ms > c.budget_ms) {
      o.pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.budget_ms / 1000)) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%s; %.0f ms)\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), ms);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
