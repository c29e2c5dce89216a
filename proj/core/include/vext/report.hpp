#pragma once

#include <string>

#include "vext/config.hpp"

namespace vext {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Machine-readable run report: verdicts plus enough echoed configuration to
/// reproduce the run bit-for-bit given the same seed (wall time excluded).
struct Report {
  Json body;

  static Report make(const std::string& command, const Json& config_echo, std::uint64_t seed);
  void set_result(const Json& result);
  void set_wall_ms(double ms);
  std::string dump() const { return body.dump(2); }
};

/// CSV table of (k, rho, local_inf, ratio) diagnostics rows.
void write_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);

}  // namespace vext
