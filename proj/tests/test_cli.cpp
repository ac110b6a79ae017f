#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "twogen/run.hpp"

using namespace twogen;

namespace {

int exit_status(const std::string& args) {
  std::string cmd = std::string(TWOGEN_CLI) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

RunConfig cfg(int g, int p, std::vector<std::string> suites) {
  RunConfig c;
  c.genus = g;
  c.punctures = p;
  c.suites = std::move(suites);
  return c;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(exit_status("--genus 3 --punctures 7 --suite atlas") == 0);
  CHECK(exit_status("--genus 3 --punctures 5 --suite thm32") == 2);
  CHECK(exit_status("--genus 2 --punctures 7 --suite thm42") == 2);
  CHECK(exit_status("--genus 3 --punctures 0 --suite atlas") == 2);
  CHECK(exit_status("--genus 3 --punctures 7 --suite nope") == 2);
  CHECK(exit_status("--genus 3 --punctures 7 --suite atlas --frobnicate") == 2);
  CHECK(exit_status("--genus 3 --punctures 7 --suite atlas --report xml") == 2);
  CHECK(exit_status("--genus 3 --punctures 7 --suite atlas --negative-controls maybe") == 2);
  CHECK(exit_status("--genus 3 --punctures 7") == 2);
  CHECK(exit_status("--help") == 0);
  CHECK(exit_status("--genus 1 --punctures 3 --suite actions") == 2);
  CHECK(exit_status("--genus 3 --punctures 2 --suite atlas --suite prop22 --suite lemma31") == 0);
}

TEST_CASE("preconditions are checked before anything runs") {
  auto r = run(cfg(3, 5, {"atlas", "thm32"}));
  CHECK(r.exit_code == 2);
  CHECK(r.error.find("requires p >= 7") != std::string::npos);
  CHECK(r.report.empty());
}

TEST_CASE("thm32 artifact") {
  auto c = cfg(3, 7, {"thm32"});
  c.emit_path = "cli_thm32.json";
  auto r = run(c);
  CHECK(r.exit_code == 0);
  std::ifstream f(c.emit_path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.artifact);
  auto j = nlohmann::json::parse(r.artifact);
  const auto& cert = j["suites"][0]["certificate"];
  CHECK(cert["outputs"].size() == 14);
  for (const auto& o : cert["outputs"]) {
    CHECK(o["verdict"] == "pass");
    CHECK(o["word"].is_string());
  }
  CHECK(j["suites"][0]["mutations"].size() == 10);
  std::remove(c.emit_path.c_str());
}

TEST_CASE("text report lists anchors and controls can be switched off") {
  auto c = cfg(3, 7, {"atlas", "lemma41"});
  auto r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("B_2 A_5 A_3 A_1 = D_1 E B") != std::string::npos);
  CHECK(r.report.find("overall: PASS") != std::string::npos);
  c.negative_controls = false;
  auto off = run(c);
  CHECK(off.exit_code == 0);
  CHECK(off.report.find("SKIP control.epsilon") != std::string::npos);
  CHECK(off.report.find("SKIP commute.a1.a2") != std::string::npos);
  CHECK(off.report.find("PASS mutation") == std::string::npos);
  CHECK(r.report.find("PASS mutation") != std::string::npos);
}

TEST_CASE("reports do not depend on the thread count") {
  auto a = cfg(3, 7, {"atlas", "actions", "prop22", "lemma31", "lemma41"});
  auto b = a;
  a.threads = 1;
  b.threads = 8;
  auto ra = run(a);
  auto rb = run(b);
  CHECK(ra.artifact == rb.artifact);
  CHECK(ra.report == rb.report);
  a.report = b.report = ReportFormat::json;
  CHECK(run(a).report == run(b).report);
}
