#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vext/geometry.hpp"
#include "vext/point.hpp"

namespace vext {

enum class Outcome { Certified, Falsified, Inconclusive };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Certified: return "Certified";
    case Outcome::Falsified: return "Falsified";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// One per-epsilon witness or obstruction row of a sequential property check.
struct EpsilonRecord {
  double eps = 0.0;
  int k = 0;
  double rho = 0.0;
  std::vector<Point> shifts;
  std::vector<Point> aux_points;  // auxiliary base points for the one-sequence properties
  EmptinessVerdict emptiness;
  bool success = false;
};

/// Trichotomy verdict carrying a machine-checkable witness or counterexample.
struct PropertyVerdict {
  Outcome outcome = Outcome::Inconclusive;
  std::vector<EpsilonRecord> per_epsilon;
  std::optional<Point> witness_point;
  std::optional<double> value;  // estimate attached to the verdict (ratio, infimum, ...)
  std::string notes;

  bool certified() const { return outcome == Outcome::Certified; }
  bool falsified() const { return outcome == Outcome::Falsified; }
};

inline PropertyVerdict make_verdict(Outcome o, std::string notes = "") {
  PropertyVerdict v;
  v.outcome = o;
  v.notes = std::move(notes);
  return v;
}

}  // namespace vext
