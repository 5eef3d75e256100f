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

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "incompat/incompat.hpp"
#include "incompat/json_io.hpp"

// Exit codes: 0 success / pass / feasible / undetected; 1 input error
// (malformed JSON, dimension mismatch); 2 validation failure; 3 incompatible
// or infeasible; 4 inconclusive; 5 solver failure.

namespace {

using incompat::SolverOptions;

struct GlobalConfig {
  double tolerance = 1e-7;
  int max_iter = 200;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";

  SolverOptions solver() const {
    SolverOptions opts;
    opts.tol = tolerance;
    opts.max_iter = max_iter;
    return opts;
  }
};

void write_output(const GlobalConfig& cfg, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) {
    throw incompat::ValidationError("cannot open output file: " + cfg.output);
  }
  out << text;
}

std::vector<incompat::Povm> load_povms(const std::vector<std::string>& paths) {
  std::vector<incompat::Povm> ps;
  ps.reserve(paths.size());
  for (const std::string& path : paths) {
    ps.push_back(incompat::povm_from_json(incompat::load_json_file(path)));
  }
  return ps;
}

Eigen::Vector3d parse_triple(const std::string& text) {
  Eigen::Vector3d v;
  std::stringstream ss(text);
  std::string item;
  for (int k = 0; k < 3; ++k) {
    if (!std::getline(ss, item, ',')) {
      throw incompat::ValidationError("expected three comma-separated values: " +
                                      text);
    }
    v(k) = std::stod(item);
  }
  return v;
}

int run_validate(const GlobalConfig& cfg, const std::string& path) {
  const incompat::Povm p =
      incompat::povm_from_json(incompat::load_json_file(path));
  const incompat::ValidationReport rep =
      incompat::validate(p, std::max(cfg.tolerance, incompat::kPsdTol));
  write_output(cfg, incompat::dump_json(incompat::validation_report_to_json(rep)));
  return rep.pass ? 0 : 2;
}

int run_tau(const GlobalConfig& cfg, const std::vector<std::string>& paths) {
  const incompat::IncompatReport rep =
      incompat::tau(load_povms(paths), cfg.solver());
  write_output(cfg, incompat::dump_json(incompat::incompat_report_to_json(rep)));
  return rep.verdict == incompat::kVerdictIncompatible ? 3 : 0;
}

int run_check_joint(const GlobalConfig& cfg,
                    const std::vector<std::string>& paths) {
  const incompat::JointSolution sol =
      incompat::joint_feasibility(load_povms(paths), cfg.solver());
  write_output(
      cfg, incompat::dump_json(incompat::joint_solution_to_json(sol, cfg.tolerance)));
  switch (sol.status) {
    case incompat::Feasibility::feasible:
      return 0;
    case incompat::Feasibility::infeasible:
      return 3;
    case incompat::Feasibility::inconclusive:
      return 4;
  }
  return 5;
}

int run_robustness(const GlobalConfig& cfg,
                   const std::vector<std::string>& paths, double bisect_tol) {
  const incompat::RobustnessResult res =
      incompat::robustness(load_povms(paths), bisect_tol, cfg.solver());
  write_output(cfg,
               incompat::dump_json(incompat::robustness_to_json(res, bisect_tol)));
  return 0;
}

int run_uncertainty(const GlobalConfig& cfg,
                    const std::vector<std::string>& paths, double eta,
                    const std::vector<std::string>& lambda_paths) {
  const std::vector<incompat::Povm> ps = load_povms(paths);
  std::vector<incompat::StochasticMatrix> lambdas;
  if (!lambda_paths.empty()) {
    if (lambda_paths.size() != ps.size()) {
      throw incompat::DimensionError(
          "uncertainty: need one stochastic matrix per observable");
    }
    for (const std::string& path : lambda_paths) {
      lambdas.push_back(
          incompat::stochastic_from_json(incompat::load_json_file(path)));
    }
  } else {
    if (eta < 0.0 || eta > 1.0) {
      throw incompat::ValidationError("uncertainty: eta must lie in [0, 1]");
    }
    // Depolarizing noise as the stochastic matrix
    // Lambda = eta 1 + (1 - eta) tr(A_xi)/d in each column.
    for (const incompat::Povm& p : ps) {
      incompat::StochasticMatrix lam;
      const int m = p.outcomes();
      lam.entries.resize(m, m);
      for (int i = 0; i < m; ++i) {
        const double base = p.effects[i].op.trace().real() / p.dim();
        for (int j = 0; j < m; ++j) {
          lam.entries(i, j) = (i == j ? eta : 0.0) + (1.0 - eta) * base;
        }
      }
      lambdas.push_back(std::move(lam));
    }
  }
  const int d = ps.at(0).dim();
  const incompat::ParamPoint pt = incompat::full_param_point(
      Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
  const incompat::UncertaintyResult res =
      incompat::uncertainty_check(ps, lambdas, pt, cfg.solver());
  write_output(cfg,
               incompat::dump_json(incompat::uncertainty_to_json(res, cfg.tolerance)));
  return 0;
}

int run_chsh(const GlobalConfig& cfg, const std::vector<std::string>& qubit,
             const std::vector<std::string>& files) {
  nlohmann::json out;
  if (!qubit.empty()) {
    const Eigen::Vector3d a = parse_triple(qubit.at(0));
    const Eigen::Vector3d b = parse_triple(qubit.at(1));
    const double value = incompat::chsh_max_qubit(a, b);
    const double theta = std::asin(std::min(1.0, a.cross(b).norm()));
    out = nlohmann::json{{"max_violation", value},
                         {"angles", nlohmann::json::array({theta})}};
  } else {
    const incompat::SharpObservable a = incompat::from_observable(
        incompat::observable_from_json(incompat::load_json_file(files.at(0))));
    const incompat::SharpObservable b = incompat::from_observable(
        incompat::observable_from_json(incompat::load_json_file(files.at(1))));
    out = incompat::chsh_result_to_json(incompat::chsh_max_general(a, b));
  }
  out["tolerance"] = cfg.tolerance;
  write_output(cfg, incompat::dump_json(out));
  return 0;
}

int run_chamber_export(const GlobalConfig& cfg, const std::string& s_text,
                       int n, bool format_given) {
  const Eigen::Vector3d s = parse_triple(s_text);
  const std::vector<Eigen::Matrix3d> samples =
      incompat::chamber_export(s, n, cfg.seed);
  // The point cloud is CSV unless JSON is asked for explicitly.
  if (format_given && cfg.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const Eigen::Matrix3d& m : samples) {
      arr.push_back(nlohmann::json::array(
          {m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)}));
    }
    const nlohmann::json out{{"s", {s.x(), s.y(), s.z()}},
                             {"seed", cfg.seed},
                             {"n", n},
                             {"points", std::move(arr)}};
    write_output(cfg, incompat::dump_json(out));
    return 0;
  }
  std::string text = "# ";
  text += incompat::dump_json(
      nlohmann::json{{"s", {s.x(), s.y(), s.z()}}, {"seed", cfg.seed}, {"n", n}},
      0);
  text.erase(std::remove(text.begin(), text.end(), '\n'), text.end());
  text += "\ni11,i12,i13,i22,i23,i33\n";
  char buf[64];
  for (const Eigen::Matrix3d& m : samples) {
    const double vals[6] = {m(0, 0), m(0, 1), m(0, 2),
                            m(1, 1), m(1, 2), m(2, 2)};
    for (int k = 0; k < 6; ++k) {
      std::snprintf(buf, sizeof(buf), "%.12g", vals[k]);
      text += buf;
      text += (k < 5) ? ',' : '\n';
    }
  }
  write_output(cfg, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "incompat: joint measurability and incompatibility of quantum "
      "observables via Fisher information criteria"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalConfig cfg;
  if (const char* env_tol = std::getenv("INCOMPAT_TOL")) {
    cfg.tolerance = std::atof(env_tol);
  }
  app.add_option("--tolerance", cfg.tolerance,
                 "certification tolerance for solves and verdicts");
  app.add_option("--max-iter", cfg.max_iter, "interior-point iteration cap");
  app.add_option("--seed", cfg.seed, "seed for sampling commands");
  app.add_option("--output,-o", cfg.output, "output path (default stdout)");
  app.add_option("--format", cfg.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string validate_path;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check POVM invariants");
  validate_cmd->add_option("povm", validate_path, "POVM JSON file")->required();

  std::vector<std::string> tau_paths;
  CLI::App* tau_cmd =
      app.add_subcommand("tau", "incompatibility measure of a family");
  tau_cmd->add_option("povms", tau_paths, "POVM JSON files")
      ->required()
      ->expected(-1);

  std::vector<std::string> joint_paths;
  CLI::App* joint_cmd =
      app.add_subcommand("check-joint", "decide joint measurability");
  joint_cmd->add_option("povms", joint_paths, "POVM JSON files")
      ->required()
      ->expected(-1);

  std::vector<std::string> robust_paths;
  double bisect_tol = 1e-4;
  CLI::App* robust_cmd =
      app.add_subcommand("robustness", "minimal compatibilizing noise");
  robust_cmd->add_option("povms", robust_paths, "POVM JSON files")
      ->required()
      ->expected(-1);
  robust_cmd->add_option("--bisect-tol", bisect_tol,
                         "bisection bracket width target");

  std::vector<std::string> unc_paths, unc_lambdas;
  double unc_eta = -1.0;
  CLI::App* unc_cmd = app.add_subcommand(
      "uncertainty", "measurement uncertainty check for noisy observables");
  unc_cmd->add_option("povms", unc_paths, "POVM JSON files")
      ->required()
      ->expected(-1);
  CLI::Option* eta_opt =
      unc_cmd->add_option("--eta", unc_eta, "uniform depolarizing visibility");
  unc_cmd->add_option("--lambda", unc_lambdas,
                      "stochastic matrix JSON files, one per observable")
      ->excludes(eta_opt);

  std::vector<std::string> chsh_qubit, chsh_files;
  CLI::App* chsh_cmd =
      app.add_subcommand("chsh", "maximal CHSH violation for two observables");
  chsh_cmd->add_option("--qubit", chsh_qubit,
                       "two Bloch unit vectors a1,a2,a3 b1,b2,b3")
      ->expected(2);
  chsh_cmd->add_option("observables", chsh_files,
                       "two +-1-valued observable JSON files")
      ->expected(2);

  std::string chamber_s = "0,0,0";
  int chamber_n = 100;
  CLI::App* chamber_cmd = app.add_subcommand(
      "chamber-export", "sample the qubit complementarity chamber boundary");
  chamber_cmd->add_option("--s", chamber_s, "Bloch point s1,s2,s3");
  chamber_cmd->add_option("--n", chamber_n, "number of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*validate_cmd) return run_validate(cfg, validate_path);
    if (*tau_cmd) return run_tau(cfg, tau_paths);
    if (*joint_cmd) return run_check_joint(cfg, joint_paths);
    if (*robust_cmd) return run_robustness(cfg, robust_paths, bisect_tol);
    if (*unc_cmd) {
      if (unc_eta < 0.0 && unc_lambdas.empty()) {
        throw incompat::ValidationError(
            "uncertainty: provide --eta or --lambda files");
      }
      return run_uncertainty(cfg, unc_paths, unc_eta, unc_lambdas);
    }
    if (*chsh_cmd) {
      if (chsh_qubit.empty() && chsh_files.size() != 2) {
        throw incompat::ValidationError(
            "chsh: provide --qubit vectors or two observable files");
      }
      return run_chsh(cfg, chsh_qubit, chsh_files);
    }
    if (*chamber_cmd) {
      return run_chamber_export(cfg, chamber_s, chamber_n,
                                app.count("--format") > 0);
    }
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON structure: " << e.what() << "\n";
    return 1;
  } catch (const incompat::SolverError& e) {
    std::cerr << "error: solver failure: " << e.what() << "\n";
    return 5;
  } catch (const incompat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
