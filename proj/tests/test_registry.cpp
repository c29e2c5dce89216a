#include <doctest.h>

#include <algorithm>

#include "vext/registry.hpp"

using namespace vext;

TEST_CASE("registry completeness") {
  std::vector<std::string> ids = example_ids();
  std::vector<std::string> expected = {"E1.5",   "E3.4.1", "E3.4.2", "E3.4.3", "E3.4.4",
                                       "E3.4.5", "E4.2",   "E4.3",   "E4.4",   "E4.5"};
  std::sort(ids.begin(), ids.end());
  std::sort(expected.begin(), expected.end());
  CHECK(ids == expected);
  CHECK_THROWS_AS(get_example("E9.9"), Error);
  CHECK_THROWS_AS(run_example("E9.9", RunOptions{}), Error);
}

TEST_CASE("pair catalogs carry every listed direction") {
  CHECK(get_example("E3.4.3").pairs.size() == 5);  // four directions plus the alternating pair
  CHECK(get_example("E3.4.4").pairs.size() == 4);
  CHECK(get_example("E3.4.5").pairs.size() == 2);
}

TEST_CASE("registered sequences live in their sets for k = 1..100") {
  for (const std::string& id : example_ids()) {
    const ExampleEntry& e = get_example(id);
    if (e.sets.empty()) continue;
    for (const PairFixture& pair : e.pairs) {
      REQUIRE(pair.seq.n_sets() == static_cast<int>(e.sets.size()));
      for (long k = 1; k <= 100; ++k)
        for (int i = 0; i < pair.seq.n_sets(); ++i) {
          INFO(id, " ", pair.label, " k=", k, " set=", i);
          CHECK(contains(e.sets[static_cast<std::size_t>(i)], pair.seq.eval(i, k), 1e-7));
        }
    }
  }
}

TEST_CASE("problem entries evaluate their sequences") {
  for (const std::string& id : {"E4.2", "E4.3", "E4.4", "E4.5"}) {
    const ExampleEntry& e = get_example(id);
    REQUIRE(e.problem.has_value());
    REQUIRE(e.problem_seq.has_value());
    for (long k = 1; k <= 100; ++k) {
      double x = e.problem_seq->eval_single(k).coords[0];
      CHECK(contains(e.problem->omega, Point{x}, 0.0));
      CHECK(std::isfinite(e.problem->f.eval(x)));
    }
  }
}

TEST_CASE("run_example diffs analytic facts (fast problem entry)") {
  RunReport rep = run_example("E4.3", RunOptions{});
  CHECK(rep.all_match);
  CHECK_FALSE(rep.rows.empty());
  CHECK_FALSE(rep.any_inconclusive);
}
