#include "doctest.h"
#include "stepanov/harness.hpp"

using namespace stepanov;

TEST_CASE("corpus instances replay from their descriptions") {
  const auto corpus = harness::generate_corpus(42, {10, 3, {4, 10, 50}, -8, 8});
  REQUIRE(corpus.size() == 10);
  for (const auto& inst : corpus) {
    CHECK(harness::replay(inst.description) == inst.u);
    CHECK(harness::corpus_instance(42, inst.index).u == inst.u);
    CHECK(inst.u.dim() <= 3);
  }
}

TEST_CASE("reports are deterministic without timing") {
  const auto a = harness::run_suite("window-domination", 7).to_json(false);
  const auto b = harness::run_suite("window-domination", 7).to_json(false);
  CHECK(a == b);
  CHECK_FALSE(a.contains("timing"));
  CHECK(harness::run_suite("window-domination", 7).to_json(true).contains("timing"));
}

TEST_CASE("aliases resolve") {
  CHECK(harness::run_suite("sandwich", 1).suite == "bochner-algebra");
  CHECK(harness::run_suite("section7", 1).suite == "exp-oscillation-example");
  CHECK_THROWS(harness::run_suite("nope", 1));
}

TEST_CASE("brute-force window maximum on a hand example") {
  const std::vector<double> terms{1.0, 4.0, 2.0, 3.0};
  // m = 4: cells have measure 1/4, so delta = 3/8 takes the 4 and half of the 3.
  CHECK(harness::ui_window_max_bruteforce(terms, 0.375) == doctest::Approx((4.0 + 1.5) / 4.0));
}
