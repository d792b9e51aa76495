// One line per acceptance criterion. Time limits are part of the criterion.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "fim/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<const char*> suites;
  double limit_seconds;
};

const std::vector<Criterion> kCriteria{
    {1, "inverse monoid axioms on 1000 random words", {"axioms"}, 5},
    {2, "word problem against prefix traces, all pairs up to length 5", {"word-problem"}, 30},
    {3, "order automaton against tree containment", {"order"}, 60},
    {4, "fixed point criterion, edge embedding, stable edge letters", {"permv", "embed", "edge-stable"}, 60},
    {5, "fixed points generated by verified tiles", {"tiles"}, 60},
    {6, "periodic points generated by tiles of powers", {"perio"}, 60},
    {7, "infinitude verdicts against enumeration growth", {"ppff"}, 60},
    {8, "radical grammar against direct membership", {"cfrad"}, 120},
    {9, "context-free but not rational radical", {"exnonrat"}, 10},
    {10, "tracked construction images equal fixed points", {"consen"}, 60},
    {11, "fixed points idempotent, witnesses of every norm", {"grper"}, 60},
    {12, "non-fixed tile regression", {"gap"}, 10},
};

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::size_t checks = 0;
    std::vector<std::string> problems;
    for (const char* suite : c.suites) {
      try {
        const auto r = fim::run_suite(suite);
        checks += r.checks;
        if (!r.passed || r.skipped) {
          ok = false;
          for (const auto& ce : r.counterexamples) problems.push_back(std::string(suite) + ": " + ce);
          if (r.skipped) problems.push_back(std::string(suite) + ": skipped");
        }
      } catch (const std::exception& e) {
        ok = false;
        problems.push_back(std::string(suite) + ": " + e.what());
      }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    if (!in_time) problems.push_back("time limit exceeded");
    const bool pass = ok && in_time;
    failures += !pass;
    std::printf("%s %2d %s (%zu checks, %.2fs, limit %.0fs)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                checks, seconds, c.limit_seconds);
    for (const auto& p : problems) std::printf("     %s\n", p.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
