#pragma once

// Curated endomorphisms and the bounded verification suites run by
// `fimtool verify` and the acceptance tests.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fim/endo.hpp"
#include "fim/fgroup.hpp"

namespace fim {

struct CuratedExample {
  std::string name;
  std::string spec_text;
  EndoSpec spec;
  CurlReport curl;
};

// swap, double, aba, identity, gap, cycle3, aca3.
const std::vector<CuratedExample>& curated_examples();
// Throws PreconditionError for an unknown name.
const CuratedExample& curated(std::string_view name);

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  std::size_t threads = 1;
  std::size_t instances = 1000;
  // When set, suites run on this endomorphism instead of the curated ones.
  std::optional<EndoSpec> spec;
  std::optional<CurlReport> curl;  // overrides the bounded curl for `spec`
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  // Set when the given endomorphism is outside the suite's hypotheses.
  bool skipped = false;
  std::size_t checks = 0;
  std::vector<std::string> counterexamples;  // first few failures
  std::vector<std::string> notes;

  void check(bool ok, const std::function<std::string()>& describe);
  void skip(std::string reason);
};

std::vector<std::string> suite_names();
// Throws PreconditionError for an unknown suite.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options = {});

}  // namespace fim
