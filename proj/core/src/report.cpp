#include "vext/report.hpp"

#include <cstdio>
#include <fstream>

namespace vext {

Report Report::make(const std::string& command, const Json& config_echo, std::uint64_t seed) {
  Report r;
  r.body["command"] = command;
  r.body["versions"] = Json{{"toolkit", kToolkitVersion}, {"report_schema", 1}};
  r.body["seed"] = seed;
  if (!config_echo.is_null()) r.body["config"] = config_echo;
  return r;
}

void Report::set_result(const Json& result) { body["result"] = result; }

void Report::set_wall_ms(double ms) { body["wall_ms"] = ms; }

void write_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ConfigError, "cannot write csv file: " + path);
  out << "k,rho,f_xk,local_inf,ratio\n";
  char buf[160];
  for (const DiagnosticsRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%.17g\n", r.k, r.rho, r.f_xk,
                  r.local_inf, r.ratio);
    out << buf;
  }
}

}  // namespace vext
