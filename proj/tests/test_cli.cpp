#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "cusptorsion/json_io.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(CUSPTORSION_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace

TEST_CASE("cli weights") {
  auto r = run_cli("weights --d 3 --weight 2,1");
  REQUIRE(r.exit_code == 0);
  // 4 data rows, one per element of W^1
  REQUIRE(r.output.find("k  lambda") != std::string::npos);
  auto rj = run_cli("weights --d 3 --weight 2,1 --kappa 2 --json");
  REQUIRE(rj.exit_code == 0);
  auto j = cusptorsion::json::parse(rj.output);
  REQUIRE(j["kostant"].size() == 4);
  REQUIRE(j["profile"]["strongly_acyclic"].get<bool>());

  SECTION("non-acyclic banner") {
    auto rb = run_cli("weights --d 3 --weight 1,0");
    REQUIRE(rb.exit_code == 0);
    REQUIRE(rb.output.find("not strongly acyclic") != std::string::npos);
  }
  SECTION("kappa doubles dims") {
    auto j1 = cusptorsion::json::parse(run_cli("weights --d 5 --weight 3,2,1 --json").output);
    auto j2 = cusptorsion::json::parse(
        run_cli("weights --d 5 --weight 3,2,1 --kappa 2 --json").output);
    for (size_t k = 0; k < 5; ++k) {
      long long d1 = std::stoll(j1["profile"]["degrees"][k]["dim"].get<std::string>());
      long long d2 = std::stoll(j2["profile"]["degrees"][k]["dim"].get<std::string>());
      REQUIRE(d2 == 2 * d1);
    }
  }
}

TEST_CASE("cli exit codes") {
  SECTION("validation error is 2") {
    REQUIRE(run_cli("weights --d 3 --weight 1,2").exit_code == 2);       // non-dominant
    REQUIRE(run_cli("weights --d 4 --weight 1,0").exit_code == 2);       // even d
    REQUIRE(run_cli("weights --d 3 --weight 1/2,1/2").exit_code == 2);   // Spin-only weight
    REQUIRE(run_cli("torsion /nonexistent.json").exit_code == 2);
  }
  SECTION("resource bound is 4") {
    auto r = run_cli("verify-kostant --d 3 --weight 1,0", "CUSPTORSION_MAX_RANK=1");
    REQUIRE(r.exit_code == 4);
  }
  SECTION("unknown arguments are a parse error") {
    REQUIRE(run_cli("no-such-command").exit_code == 2);
  }
}

TEST_CASE("cli verify-kostant") {
  auto r = run_cli("verify-kostant --d 3 --weight 1,0");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("PASS") != std::string::npos);
  auto rj = run_cli("verify-kostant --d 3 --weight 2,0 --json");
  REQUIRE(rj.exit_code == 0);
  auto j = cusptorsion::json::parse(rj.output);
  REQUIRE(j["match"].get<bool>());
  REQUIRE(j["enumeration_matches_closed_form"].get<bool>());
}

TEST_CASE("cli theorem") {
  auto r = run_cli("theorem --d 3 --weight 2,1 --kappa 1 --volumes 1.0 --json");
  REQUIRE(r.exit_code == 0);
  auto j = cusptorsion::json::parse(r.output);
  REQUIRE(j["strongly_acyclic"].get<bool>());
  REQUIRE(std::abs(j["anomaly_term"].get<double>() + 1.0 / cusptorsion::kPi) < 1e-12);
  SECTION("refusal path") {
    auto rr = run_cli("theorem --d 3 --weight 1,0 --json");
    REQUIRE(rr.exit_code == 0);
    auto jj = cusptorsion::json::parse(rr.output);
    REQUIRE_FALSE(jj["strongly_acyclic"].get<bool>());
    REQUIRE(jj.contains("refusal"));
  }
  SECTION("problem file input") {
    std::string path = std::string(CUSPTORSION_SAMPLES_DIR) + "/problem_d5.json";
    auto rp = run_cli("theorem --problem " + path + " --json");
    REQUIRE(rp.exit_code == 0);
    auto jj = cusptorsion::json::parse(rp.output);
    REQUIRE(jj["d"].get<int>() == 5);
  }
  SECTION("JSON output reparses identically (round trip)") {
    auto a = run_cli("theorem --d 5 --weight 2,1,1 --kappa 2 --volumes 1.0,0.5 --json");
    auto b = run_cli("theorem --d 5 --weight 2,1,1 --kappa 2 --volumes 1.0,0.5 --json");
    REQUIRE(a.exit_code == 0);
    REQUIRE(cusptorsion::json::parse(a.output) == cusptorsion::json::parse(b.output));
  }
}

TEST_CASE("cli heat-check") {
  auto r = run_cli("heat-check --d 3 --t 1 --u 1");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("OK") != std::string::npos);
  auto rj = run_cli("heat-check --d 5 --t 0.5 --u 2 --Y 300000 --json");
  REQUIRE(rj.exit_code == 0);
  auto j = cusptorsion::json::parse(rj.output);
  REQUIRE(j["comparisons"][0]["ok"].get<bool>());
}

TEST_CASE("cli torsion") {
  std::string path = std::string(CUSPTORSION_SAMPLES_DIR) + "/complex_two_term.json";
  auto r = run_cli("torsion " + path + " --json");
  REQUIRE(r.exit_code == 0);
  auto j = cusptorsion::json::parse(r.output);
  REQUIRE(j["torsion"].get<std::string>() == "5");
  SECTION("malformed input") {
    std::string bad = std::string(CUSPTORSION_SAMPLES_DIR) + "/../README.md";
    REQUIRE(run_cli("torsion " + bad).exit_code == 2);
  }
}

TEST_CASE("cli selftest") { REQUIRE(run_cli("selftest").exit_code == 0); }
