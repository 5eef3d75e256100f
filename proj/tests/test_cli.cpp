// Copyright 2026 The incompat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

struct CliResult {
  int exit_code;
  std::string out;
};

static CliResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(INCOMPAT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  return CliResult{WEXITSTATUS(status), out};
}

static std::string fx(const std::string& name) {
  return std::string(INCOMPAT_FIXTURE_DIR) + "/" + name;
}

TEST_CASE("validate: pass gives 0, failure gives 2") {
  CHECK(run_cli("validate " + fx("sigmaz.json")).exit_code == 0);
  const CliResult bad = run_cli("validate " + fx("invalid_effect.json"));
  CHECK(bad.exit_code == 2);
  const auto j = nlohmann::json::parse(bad.out);
  CHECK(j.at("min_effect_eigenvalue").get<double>() ==
        doctest::Approx(-0.1));
  CHECK_FALSE(j.at("pass").get<bool>());
}

TEST_CASE("tau on the bundled complementary pair") {
  const CliResult res =
      run_cli("tau " + fx("sigmax.json") + " " + fx("sigmaz.json"));
  CHECK(res.exit_code == 3);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("tau").get<double>() == doctest::Approx(2.0));
  CHECK(j.at("threshold").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("verdict").get<std::string>() == "incompatible");
}

TEST_CASE("check-joint: depolarized pair feasible with explicit joint") {
  const CliResult res = run_cli("check-joint " + fx("sigmax_eta05.json") +
                                " " + fx("sigmaz_eta05.json"));
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("status").get<std::string>() == "feasible");
  CHECK(j.at("joint").at("effects").size() == 4);

  CHECK(run_cli("check-joint " + fx("sigmax.json") + " " + fx("sigmaz.json"))
            .exit_code == 3);
}

TEST_CASE("malformed inputs exit 1") {
  CHECK(run_cli("tau /dev/null").exit_code == 1);
  CHECK(run_cli("tau " + fx("no_such_file.json")).exit_code == 1);
  // Dimension mismatch between a qubit and a qutrit observable.
  CHECK(run_cli("tau " + fx("sigmax.json") + " " + fx("fourier3_comp.json"))
            .exit_code == 1);
}

TEST_CASE("uncertainty flips verdict across the noise boundary") {
  const std::string files = fx("sigmax.json") + " " + fx("sigmaz.json");
  const auto loud =
      nlohmann::json::parse(run_cli("uncertainty " + files + " --eta 0.8").out);
  CHECK(loud.at("verdict").get<std::string>() == "violates-qm-bound");
  const auto quiet =
      nlohmann::json::parse(run_cli("uncertainty " + files + " --eta 0.7").out);
  CHECK(quiet.at("verdict").get<std::string>() == "within-bound");

  // Explicit stochastic matrices matching eta = 0.8 give the same t value.
  const auto lam = nlohmann::json::parse(
      run_cli("uncertainty " + files + " --lambda " + fx("lambda_eta08.json") +
              " --lambda " + fx("lambda_eta08.json"))
          .out);
  CHECK(lam.at("t_value").get<double>() ==
        doctest::Approx(loud.at("t_value").get<double>()).epsilon(1e-10));
}

TEST_CASE("chsh qubit form and file form agree") {
  const auto a = nlohmann::json::parse(run_cli("chsh --qubit 1,0,0 0,0,1").out);
  const auto b = nlohmann::json::parse(
      run_cli("chsh " + fx("obs_x.json") + " " + fx("obs_z.json")).out);
  CHECK(a.at("max_violation").get<double>() ==
        doctest::Approx(b.at("max_violation").get<double>()).epsilon(1e-12));
}

TEST_CASE("identical inputs and seed give byte-identical output") {
  const std::string cmd = "chamber-export --s 0.1,0.2,0.3 --n 50 --seed 42";
  const CliResult first = run_cli(cmd);
  const CliResult second = run_cli(cmd);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("i11,i12,i13,i22,i23,i33") != std::string::npos);

  const CliResult other =
      run_cli("chamber-export --s 0.1,0.2,0.3 --n 50 --seed 43");
  CHECK(first.out != other.out);

  const std::string tau_cmd = "tau " + fx("trine.json") + " " + fx("sigmaz.json");
  CHECK(run_cli(tau_cmd).out == run_cli(tau_cmd).out);
}

TEST_CASE("robustness output carries bracket and lower bound") {
  const CliResult res = run_cli("robustness " + fx("sigmax.json") + " " +
                                fx("sigmaz.json") + " --bisect-tol 1e-3");
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("epsilon").get<double>() ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-3));
  CHECK(j.at("lower_bound").get<double>() ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-7));
  CHECK(j.at("bracket").size() == 2);
}

TEST_CASE("INCOMPAT_TOL environment variable sets the default tolerance") {
  const std::string cmd = std::string("INCOMPAT_TOL=1e-5 ") + INCOMPAT_CLI_PATH +
                          " tau " + fx("sigmaz.json") + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), n);
  }
  pclose(pipe);
  const auto j = nlohmann::json::parse(out);
  CHECK(j.at("tolerance").get<double>() == doctest::Approx(1e-5));
}
