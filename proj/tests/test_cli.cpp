#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vext/config.hpp"

namespace fs = std::filesystem;
using vext::Json;

namespace {

std::string bin() {
  const char* b = std::getenv("VEXT_BIN");
  REQUIRE_MESSAGE(b != nullptr, "VEXT_BIN must point at the CLI binary");
  return b;
}

struct RunOut {
  int exit_code = -1;
  std::string out;
};

RunOut run(const std::string& args) {
  std::string cmd = bin() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunOut r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "vext_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_json(const std::string& name, const Json& doc) {
  fs::path p = temp_dir() / name;
  std::ofstream out(p);
  out << doc.dump(2);
  return p;
}

Json crossing_approx_config() {
  return Json{
      {"schema_version", 1},
      {"property", "approx_stationary"},
      {"sets", Json::array({Json{{"type", "halfspace"}, {"a", {1.0, 0.0}}, {"b", 0.0}},
                            Json{{"type", "halfspace"}, {"a", {0.0, 1.0}}, {"b", 0.0}}})},
      {"sequence",
       Json{{"type", "closed_form"}, {"coords", Json::array({"0", "0"})}, {"single", true}}},
      {"params", Json{{"epsilons", {1.0, 0.1}}}},
  };
}

Json e15_extremal_config() {
  Json branch = {{"type", "polynomial_region"},
                 {"terms", Json::array({Json{{"c", 1.0}, {"pow", {1, 1}}}})},
                 {"rel", "ge"},
                 {"value", 1.0},
                 {"side", Json::array({Json{{"a", {-1.0, 0.0}}, {"b", 0.0}, {"strict", true}}})},
                 {"convex", true}};
  return Json{
      {"schema_version", 1},
      {"property", "extremal"},
      {"sets", Json::array({branch, Json{{"type", "halfspace"}, {"a", {0.0, 1.0}}, {"b", 0.0}}})},
      {"sequences",
       Json{{"type", "closed_form"},
            {"coords", Json::array({Json::array({"k", "1/k"}), Json::array({"k", "0"})})}}},
      {"rho", 1.0},
      {"params", Json{{"epsilons", {1.0, 0.1}},
                      {"hints", Json::array({Json{{"set", 0},
                                                  {"direction", {0.0, -1.0}},
                                                  {"clearance", "1/k"}}})}}},
  };
}

Json e15_separation_config() {
  Json cfg = e15_extremal_config();
  cfg["property"] = "approx_stationary";  // ignored by the separation command
  cfg["sequences"] = Json{{"type", "closed_form"},
                          {"coords", Json::array({"k", "0"})},
                          {"single", true}};
  cfg["eps"] = 0.101;
  cfg["norm"] = Json{{"base", "linf"}, {"product", "max"}, {"dual", "mirror"}};
  cfg.erase("rho");
  return cfg;
}

}  // namespace

TEST_CASE("list-examples prints the ten catalog entries") {
  RunOut r = run("list-examples");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("E1.5") != std::string::npos);
  int lines = 0;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 10);

  RunOut js = run("--json list-examples");
  CHECK(js.exit_code == 0);
  Json arr = Json::parse(js.out);
  CHECK(arr.is_array());
  CHECK(arr.size() == 10);
}

TEST_CASE("usage errors exit with code 3") {
  CHECK(run("list-examples --frobnicate").exit_code == 3);
  CHECK(run("run-example E9").exit_code == 3);
  CHECK(run("").exit_code == 3);
}

TEST_CASE("check: certified, falsified and schema-error exit codes") {
  fs::path ok = write_json("e15_extremal.json", e15_extremal_config());
  RunOut r = run("check " + ok.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("Certified") != std::string::npos);

  fs::path bad = write_json("crossing_approx.json", crossing_approx_config());
  CHECK(run("check " + bad.string()).exit_code == 1);

  Json missing = crossing_approx_config();
  missing.erase("sequence");
  fs::path miss = write_json("missing_sequence.json", missing);
  RunOut rm = run("check " + miss.string());
  CHECK(rm.exit_code == 3);
  CHECK(rm.out.find("sequence") != std::string::npos);

  Json unknown = crossing_approx_config();
  unknown["extra_field"] = 42;
  fs::path unk = write_json("unknown_field.json", unknown);
  RunOut ru = run("check " + unk.string());
  CHECK(ru.exit_code == 3);
  CHECK(ru.out.find("extra_field") != std::string::npos);
}

TEST_CASE("check emits machine-readable reports with a config echo") {
  fs::path ok = write_json("e15_extremal_json.json", e15_extremal_config());
  RunOut r = run("--json check " + ok.string());
  CHECK(r.exit_code == 0);
  Json rep = Json::parse(r.out);
  CHECK(rep["result"]["outcome"] == "Certified");
  CHECK(rep["config"] == e15_extremal_config());
  CHECK(rep["versions"]["toolkit"].is_string());
  CHECK(rep.contains("wall_ms"));
}

TEST_CASE("separation search and verify round-trip, tamper detection") {
  fs::path cfg = write_json("e15_sep.json", e15_separation_config());
  fs::path cert = temp_dir() / "e15_cert.json";
  RunOut search = run("separation " + cfg.string() + " --mode search --cert " + cert.string());
  CHECK(search.exit_code == 0);
  REQUIRE(fs::exists(cert));

  RunOut verify = run("separation " + cfg.string() + " --mode verify --cert " + cert.string());
  CHECK(verify.exit_code == 0);

  // break the normalization and expect a violation listing
  Json doc = Json::parse(std::ifstream(cert));
  for (auto& n : doc["normals"])
    for (auto& c : n) c = c.get<double>() * 2.0;
  fs::path tampered = write_json("e15_cert_tampered.json", doc);
  RunOut bad = run("separation " + cfg.string() + " --mode verify --cert " + tampered.string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("violation") != std::string::npos);

  RunOut noc = run("separation " + cfg.string() + " --mode verify");
  CHECK(noc.exit_code == 3);
}

TEST_CASE("plot writes deterministic svg for 2-D fixtures and refuses 3-D") {
  fs::path out1 = temp_dir() / "plot1.svg";
  fs::path out2 = temp_dir() / "plot2.svg";
  CHECK(run("plot E1.5 --out " + out1.string()).exit_code == 0);
  CHECK(run("plot E1.5 --out " + out2.string()).exit_code == 0);
  std::ostringstream s1, s2;
  s1 << std::ifstream(out1).rdbuf();
  s2 << std::ifstream(out2).rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().rfind("<svg", 0) == 0);
  CHECK(s1.str().find("polyline") == std::string::npos);  // regions are shaded, not curves
  CHECK(run("plot E3.4.5 --out " + (temp_dir() / "osc.svg").string()).exit_code == 0);

  Json threed = {
      {"schema_version", 1},
      {"property", "extremal"},
      {"sets", Json::array({Json{{"type", "halfspace"}, {"a", {1.0, 0.0, 0.0}}, {"b", 0.0}}})},
  };
  fs::path p3 = write_json("threed.json", threed);
  CHECK(run("plot " + p3.string() + " --out " + (temp_dir() / "bad.svg").string()).exit_code == 3);
}

TEST_CASE("run-example exit codes and csv emission") {
  CHECK(run("run-example E4.3").exit_code == 0);
  fs::path csv = temp_dir() / "e44.csv";
  CHECK(run("--csv " + csv.string() + " run-example E4.4").exit_code == 0);
  std::ostringstream body;
  body << std::ifstream(csv).rdbuf();
  CHECK(body.str().rfind("k,rho", 0) == 0);
  CHECK(body.str().find("\n") != std::string::npos);
}

TEST_CASE("reports reproduce bit-for-bit under a fixed seed") {
  fs::path cfg = write_json("repro.json", crossing_approx_config());
  RunOut a = run("--json --seed 99 check " + cfg.string());
  RunOut b = run("--json --seed 99 check " + cfg.string());
  Json ja = Json::parse(a.out);
  Json jb = Json::parse(b.out);
  ja.erase("wall_ms");
  jb.erase("wall_ms");
  CHECK(ja == jb);
}

TEST_CASE("VEXT_RMAX overrides the radius cap") {
  fs::path cfg = write_json("rmax.json", e15_extremal_config());
  std::string cmd = "VEXT_RMAX=50 " + bin() + " check " + cfg.string() + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  int bad = std::system(("VEXT_RMAX=abc " + bin() + " check " + cfg.string() + " >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(bad) == 3);
}
