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

#include "incompat/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace incompat {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError("matrix JSON must be a nonempty array of rows");
  }
  const Eigen::Index nrows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index ncols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXcd m(nrows, ncols);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != ncols) {
      throw ValidationError("matrix JSON rows have inconsistent lengths");
    }
    for (Eigen::Index c = 0; c < ncols; ++c) {
      const json& cell = row.at(c);
      if (cell.is_number()) {
        m(r, c) = cell.get<double>();
      } else if (cell.is_array() && cell.size() == 2) {
        m(r, c) = std::complex<double>(cell.at(0).get<double>(),
                                       cell.at(1).get<double>());
      } else {
        throw ValidationError(
            "matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json povm_to_json(const Povm& p) {
  json effects = json::array();
  for (const Effect& e : p.effects) {
    effects.push_back(json{{"label", e.label}, {"matrix", matrix_to_json(e.op)}});
  }
  return json{{"dim", p.dim()}, {"effects", std::move(effects)}};
}

Povm povm_from_json(const json& j) {
  if (!j.contains("effects")) {
    throw ValidationError("POVM JSON needs an \"effects\" array");
  }
  Povm p;
  int idx = 0;
  for (const json& ej : j.at("effects")) {
    Effect e;
    e.label = ej.contains("label") ? ej.at("label").get<std::string>()
                                   : std::to_string(idx);
    e.op = matrix_from_json(ej.at("matrix"));
    p.effects.push_back(std::move(e));
    ++idx;
  }
  if (j.contains("dim") && j.at("dim").get<int>() != p.dim()) {
    throw ValidationError("POVM JSON: declared dim does not match matrices");
  }
  return p;
}

StochasticMatrix stochastic_from_json(const json& j) {
  StochasticMatrix lam;
  const json& entries = j.contains("entries") ? j.at("entries") : j;
  const Eigen::Index nrows = static_cast<Eigen::Index>(entries.size());
  if (nrows == 0) throw ValidationError("stochastic matrix JSON is empty");
  const Eigen::Index ncols = static_cast<Eigen::Index>(entries.at(0).size());
  lam.entries.resize(nrows, ncols);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    for (Eigen::Index c = 0; c < ncols; ++c) {
      lam.entries(r, c) = entries.at(r).at(c).get<double>();
    }
  }
  if (j.contains("rows") && j.at("rows").get<int>() != lam.rows()) {
    throw ValidationError("stochastic matrix JSON: rows field mismatch");
  }
  if (j.contains("cols") && j.at("cols").get<int>() != lam.cols()) {
    throw ValidationError("stochastic matrix JSON: cols field mismatch");
  }
  require_stochastic(lam);
  return lam;
}

ParamPoint param_point_from_json(const json& j) {
  ParamPoint pt;
  pt.rho = matrix_from_json(j.at("rho"));
  for (const json& tj : j.at("tangents")) {
    pt.tangents.push_back(matrix_from_json(tj));
  }
  require_param_point(pt);
  return pt;
}

Eigen::MatrixXcd observable_from_json(const json& j) {
  const Eigen::MatrixXcd m =
      j.is_object() ? matrix_from_json(j.at("matrix")) : matrix_from_json(j);
  require_hermitian(m, 1e-10);
  return m;
}

json validation_report_to_json(const ValidationReport& rep) {
  return json{{"tolerance", rep.tol},
              {"min_effect_eigenvalue", rep.min_effect_eigenvalue},
              {"completeness_residual", rep.completeness_residual},
              {"hermiticity_residual", rep.hermiticity_residual},
              {"effects_psd", rep.effects_psd},
              {"complete", rep.complete},
              {"hermitian", rep.hermitian},
              {"pass", rep.pass}};
}

json sdp_solution_to_json(const SdpSolution& sol, bool include_matrices) {
  json j{{"value", sol.value},
         {"gap", sol.gap},
         {"primal_infeasibility", sol.primal_infeasibility},
         {"dual_infeasibility", sol.dual_infeasibility},
         {"iterations", sol.iterations},
         {"certified", sol.certified},
         {"tolerance", sol.tol}};
  if (include_matrices) {
    j["primal"] = real_matrix_to_json(sol.primal);
    json duals = json::array();
    for (const Eigen::MatrixXd& y : sol.duals) {
      duals.push_back(real_matrix_to_json(y));
    }
    j["duals"] = std::move(duals);
  }
  return j;
}

json incompat_report_to_json(const IncompatReport& rep) {
  return json{{"tau", rep.tau},
              {"threshold", rep.threshold},
              {"verdict", rep.verdict},
              {"normalized", rep.normalized},
              {"excess", rep.excess},
              {"tolerance", rep.tol},
              {"certificates",
               json{{"cross_check_residual", rep.cross_check},
                    {"solution", sdp_solution_to_json(rep.solution, false)}}}};
}

json joint_solution_to_json(const JointSolution& sol, double tol) {
  const char* status = sol.status == Feasibility::feasible ? "feasible"
                       : sol.status == Feasibility::infeasible ? "infeasible"
                                                               : "inconclusive";
  json j{{"status", status},
         {"slack", sol.slack},
         {"slack_upper", sol.slack_upper},
         {"marginal_residual", sol.marginal_residual},
         {"iterations", sol.iterations},
         {"tolerance", tol}};
  if (sol.joint) {
    j["joint"] = povm_to_json(*sol.joint);
  }
  if (!sol.certificate.empty()) {
    json cert = json::array();
    for (const Eigen::MatrixXcd& z : sol.certificate) {
      cert.push_back(matrix_to_json(z));
    }
    j["certificate"] = std::move(cert);
  }
  return j;
}

json robustness_to_json(const RobustnessResult& res, double tol) {
  return json{{"epsilon", res.epsilon},
              {"log_robustness", res.log_robustness},
              {"lower_bound", res.lower_bound},
              {"bracket", json::array({res.bracket.first, res.bracket.second})},
              {"inconclusive_band", res.inconclusive_band},
              {"tolerance", tol}};
}

json uncertainty_to_json(const UncertaintyResult& res, double tol) {
  return json{{"t_value", res.t_value},
              {"threshold", res.threshold},
              {"verdict", res.verdict},
              {"tolerance", tol}};
}

json chsh_result_to_json(const ChshResult& res) {
  json j{{"max_violation", res.max_violation}, {"angles", res.angles}};
  if (res.has_subspace) {
    json psi = json::array(), phi = json::array();
    for (Eigen::Index k = 0; k < res.psi.size(); ++k) {
      psi.push_back(json::array({res.psi(k).real(), res.psi(k).imag()}));
      phi.push_back(json::array({res.phi(k).real(), res.phi(k).imag()}));
    }
    j["psi"] = std::move(psi);
    j["phi"] = std::move(phi);
  }
  return j;
}

namespace {

void format_number(double v, std::string& out) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  // Keep a float marker so round-trips stay floats.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  out += s;
}

void dump_value(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + json(it.key()).dump() + ": ";
        dump_value(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Flat arrays of numbers stay on one line.
      bool all_scalar = true;
      for (const json& el : j) {
        if (el.is_structured()) {
          all_scalar = false;
          break;
        }
      }
      if (all_scalar) {
        out += "[";
        bool first = true;
        for (const json& el : j) {
          if (!first) out += ", ";
          first = false;
          dump_value(el, out, indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const json& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_value(el, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      format_number(j.get<double>(), out);
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  out += "\n";
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open file: " + path);
  }
  return json::parse(in);
}

}  // namespace incompat
