#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vext/extremality.hpp"
#include "vext/optimization.hpp"
#include "vext/separation.hpp"

namespace vext {

using Json = nlohmann::json;

/// Schema-validated run description. Unknown fields are rejected.
struct RunConfig {
  int schema_version = 1;
  std::string property;
  std::vector<SetExpr> sets;
  std::optional<Problem> problem;
  std::optional<SequenceSpec> sequence;  // single or multi, per property
  NormSpec norm;
  CheckParams params;
  OptBudgets budgets;
  double rho = 1.0;
  bool rho_unbounded = false;
  double alpha = 0.5;
  long k0 = 1;
  double eps = 1e-2;
  std::vector<double> eps_grid = {1e-1, 1e-2, 1e-3};
  double multiplier_bound = 10.0;
  std::string cone = "frechet";
  std::uint64_t seed = 17;
  std::optional<std::string> output_path;
  Json echo;  // the parsed document, for replayable reports
};

RunConfig parse_run_config(const Json& doc);
RunConfig load_run_config(const std::string& path);

Json norm_to_json(const NormSpec& ns);
NormSpec norm_from_json(const Json& j);
Json set_to_json(const SetExpr& s);
SetExpr set_from_json(const Json& j);
Json function_to_json(const ScalarFunction& f);
ScalarFunction function_from_json(const Json& j);
Json sequence_to_json(const SequenceSpec& s);
SequenceSpec sequence_from_json(const Json& j);

Json certificate_to_json(const SeparationCertificate& cert);
SeparationCertificate certificate_from_json(const Json& j);
void save_certificate(const SeparationCertificate& cert, const std::string& path);
SeparationCertificate load_certificate(const std::string& path);

Json verdict_to_json(const PropertyVerdict& v);
Json emptiness_to_json(const EmptinessVerdict& v);

}  // namespace vext
