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

#pragma once

#include <json.hpp>
#include <string>

#include "incompat/bell.hpp"
#include "incompat/chamber.hpp"
#include "incompat/estimation.hpp"
#include "incompat/measures.hpp"
#include "incompat/povm.hpp"
#include "incompat/sdp.hpp"

// JSON interchange. Complex matrices are arrays of [re, im] pairs,
// row-major; this format is the interchange unit for the whole CLI.

namespace incompat {

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

nlohmann::json real_matrix_to_json(const Eigen::MatrixXd& m);

/// { "dim": d, "effects": [ { "label": str, "matrix": [[[re,im],...],...] } ] }
nlohmann::json povm_to_json(const Povm& p);
Povm povm_from_json(const nlohmann::json& j);

/// { "rows": m, "cols": n, "entries": [[...]] }
StochasticMatrix stochastic_from_json(const nlohmann::json& j);

/// { "rho": matrix, "tangents": [matrix, ...] }
ParamPoint param_point_from_json(const nlohmann::json& j);

/// { "dim": d, "matrix": [...] }, or a bare matrix.
Eigen::MatrixXcd observable_from_json(const nlohmann::json& j);

nlohmann::json validation_report_to_json(const ValidationReport& rep);
nlohmann::json sdp_solution_to_json(const SdpSolution& sol,
                                    bool include_matrices = true);
nlohmann::json incompat_report_to_json(const IncompatReport& rep);
nlohmann::json joint_solution_to_json(const JointSolution& sol, double tol);
nlohmann::json robustness_to_json(const RobustnessResult& res, double tol);
nlohmann::json uncertainty_to_json(const UncertaintyResult& res, double tol);
nlohmann::json chsh_result_to_json(const ChshResult& res);

/// Serialize with every floating-point number printed to 12 significant
/// digits, so identical inputs produce byte-identical output.
std::string dump_json(const nlohmann::json& j, int indent = 2);

nlohmann::json load_json_file(const std::string& path);

}  // namespace incompat
