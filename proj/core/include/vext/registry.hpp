#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vext/extremality.hpp"
#include "vext/norms.hpp"
#include "vext/optimization.hpp"
#include "vext/sequences.hpp"
#include "vext/set_expr.hpp"

namespace vext {

/// One registered sequence tuple with its search configuration and the
/// expected extremality-type verdicts.
struct PairFixture {
  std::string label;
  SequenceSpec seq;
  std::vector<ShiftHintSpec> hints;
  Outcome expected_extremal = Outcome::Certified;
  std::optional<Outcome> expected_stationary;
};

struct RowResult {
  std::string name;
  bool match = false;
  bool inconclusive = false;
  std::string detail;
};

struct RunOptions {
  long k_budget = 10000;
  std::vector<double> epsilons = {1.0, 1e-1, 1e-2, 1e-3};
  std::uint64_t seed = 17;
  double r_max = 1e4;
};

struct RunReport {
  std::string id;
  std::vector<RowResult> rows;
  bool all_match = true;
  bool any_inconclusive = false;
  double wall_ms = 0.0;
};

/// Catalog entry for one worked example, with the analytic facts that the
/// checkers are diffed against.
struct ExampleEntry {
  std::string id;
  std::string description;
  std::vector<SetExpr> sets;               // empty for pure problem entries
  std::vector<PairFixture> pairs;          // extremality fixtures
  std::optional<SequenceSpec> single_seq;  // for the one-sequence properties
  std::optional<Problem> problem;
  std::optional<SequenceSpec> problem_seq;  // 1-D sequence for the problem layer
  NormSpec norm;
  OptBudgets opt_budgets;
  // executes every expected-verdict row and diffs against the analytic facts
  std::function<std::vector<RowResult>(const ExampleEntry&, const RunOptions&)> runner;
};

/// Immutable entry lookup; throws UnknownExample.
const ExampleEntry& get_example(const std::string& id);

std::vector<std::string> example_ids();

/// Runs every expected-verdict row of the entry through the matching module
/// operation and reports matches/mismatches.
RunReport run_example(const std::string& id, const RunOptions& opts);

/// CheckParams preconfigured for a registered pair fixture.
CheckParams fixture_params(const ExampleEntry& entry, const PairFixture& pair,
                           const RunOptions& opts);

}  // namespace vext
