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

#include "incompat/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace incompat {

namespace {

void require_family(const std::vector<Povm>& ps) {
  if (ps.empty()) throw ValidationError("need at least one observable");
  const int d = ps[0].dim();
  for (const Povm& p : ps) {
    require_valid(p);
    if (p.dim() != d) throw DimensionError("observable dimensions differ");
  }
}

std::string verdict_for(double value, double threshold, double tol) {
  if (value > threshold + tol) return kVerdictIncompatible;
  return kVerdictUndetected;
}

}  // namespace

IncompatReport tau(const std::vector<Povm>& ps, const SolverOptions& opts) {
  require_family(ps);
  const int d = ps[0].dim();

  std::vector<Eigen::MatrixXd> gbars;
  std::vector<Eigen::MatrixXd> gs;
  gbars.reserve(ps.size());
  gs.reserve(ps.size());
  for (const Povm& p : ps) {
    const FrameSuperoperators so = frame_superoperators(p);
    gbars.push_back(so.gbar_traceless());
    gs.push_back(so.g);
  }

  IncompatReport rep;
  rep.solution = min_trace_dominating(gbars, opts);
  rep.tau = rep.solution.value;
  const SdpSolution full = min_trace_dominating(gs, opts);
  rep.cross_check = std::abs((full.value - 1.0) - rep.tau);
  if (rep.cross_check > 1e-7 * (1.0 + std::abs(rep.tau))) {
    std::ostringstream os;
    os << "tau cross-check failed: t({g}) - 1 and t({gbar}) differ by "
       << rep.cross_check;
    throw SolverError(os.str(), rep.tau, full.value - 1.0);
  }

  rep.threshold = d - 1.0;
  rep.tol = opts.tol;
  rep.normalized = rep.tau / rep.threshold;
  rep.excess = std::max(rep.tau - rep.threshold, 0.0);
  rep.verdict = verdict_for(rep.tau, rep.threshold, opts.tol);
  return rep;
}

CriterionResult criterion_at_point(const std::vector<Povm>& ps,
                                   const ParamPoint& pt,
                                   const SolverOptions& opts) {
  require_family(ps);
  const int d = ps[0].dim();
  const Eigen::MatrixXd qfi = qfi_matrix(pt);

  std::vector<Eigen::MatrixXd> adjusted;
  adjusted.reserve(ps.size());
  for (const Povm& p : ps) {
    adjusted.push_back(metric_adjusted(fisher_matrix(pt, p), qfi));
  }

  CriterionResult res;
  res.t_value = min_trace_dominating(adjusted, opts).value;
  res.threshold = d - 1.0;
  res.verdict = verdict_for(res.t_value, res.threshold, opts.tol);
  return res;
}

double tau_qubit_pair(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  if (a.norm() > 1.0 + 1e-12 || b.norm() > 1.0 + 1e-12) {
    throw ValidationError("tau_qubit_pair: Bloch vectors must have norm <= 1");
  }
  const double a2 = a.squaredNorm();
  const double b2 = b.squaredNorm();
  const double ab = a.dot(b);
  const double disc = std::max(0.0, (a2 + b2) * (a2 + b2) - 4.0 * ab * ab);
  return 0.5 * (a2 + b2 + std::sqrt(disc));
}

bool busch_criterion(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  if (a.norm() > 1.0 + 1e-12 || b.norm() > 1.0 + 1e-12) {
    throw ValidationError("busch_criterion: Bloch vectors must have norm <= 1");
  }
  return (a + b).norm() + (a - b).norm() <= 2.0;
}

namespace {

// The d-1 largest singular values of gbar_A gbar_B, clamped to [0, 1].
Eigen::VectorXd von_neumann_singulars(const SharpObservable& a,
                                      const SharpObservable& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("tau_von_neumann: dimension mismatch");
  }
  if (!a.nondegenerate() || !b.nondegenerate()) {
    throw UnsupportedInputError(
        "tau_von_neumann covers nondegenerate sharp observables only; use "
        "tau for the general case");
  }
  const int d = a.dim();
  const FrameSuperoperators ga = frame_superoperators(sharp_povm(a));
  const FrameSuperoperators gb = frame_superoperators(sharp_povm(b));
  const Eigen::MatrixXd prod = ga.gbar_traceless() * gb.gbar_traceless();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(prod);
  Eigen::VectorXd s = svd.singularValues().head(d - 1);
  for (int j = 0; j < s.size(); ++j) s(j) = std::clamp(s(j), 0.0, 1.0);
  return s;
}

}  // namespace

double tau_von_neumann(const SharpObservable& a, const SharpObservable& b) {
  const Eigen::VectorXd s = von_neumann_singulars(a, b);
  double total = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    total += 1.0 + std::sqrt(1.0 - s(j) * s(j));
  }
  return total;
}

double tau_von_neumann_noisy(const SharpObservable& a,
                             const SharpObservable& b, double lambda,
                             double mu) {
  if (lambda < 0.0 || lambda > 1.0 || mu < 0.0 || mu > 1.0) {
    throw ValidationError("tau_von_neumann_noisy: noise levels must be in [0,1]");
  }
  const Eigen::VectorXd s = von_neumann_singulars(a, b);
  const double l2 = lambda * lambda;
  const double m2 = mu * mu;
  double total = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    const double disc =
        std::max(0.0, (l2 + m2) * (l2 + m2) - 4.0 * l2 * m2 * s(j) * s(j));
    total += 0.5 * (l2 + m2 + std::sqrt(disc));
  }
  return total;
}

double tau_complementary(const std::vector<double>& etas, int d) {
  if (d < 2) throw DimensionError("tau_complementary needs d >= 2");
  double sum = 0.0;
  for (double eta : etas) {
    if (eta < 0.0 || eta > 1.0) {
      throw ValidationError("tau_complementary: eta must lie in [0, 1]");
    }
    sum += eta * eta;
  }
  return (d - 1.0) * sum;
}

double tau_doubly_stochastic(const std::vector<StochasticMatrix>& lambdas,
                             int d) {
  if (d < 2) throw DimensionError("tau_doubly_stochastic needs d >= 2");
  double total = 0.0;
  for (const StochasticMatrix& lam : lambdas) {
    require_doubly_stochastic(lam);
    if (lam.rows() != d) {
      throw DimensionError("tau_doubly_stochastic: matrix size must be d");
    }
    const Eigen::MatrixXd centered =
        lam.entries - Eigen::MatrixXd::Constant(d, d, 1.0 / d);
    total += (centered * centered).trace();
  }
  return total;
}

UncertaintyResult uncertainty_check(const std::vector<Povm>& ps,
                                    const std::vector<StochasticMatrix>& lambdas,
                                    const ParamPoint& pt,
                                    const SolverOptions& opts) {
  if (ps.size() != lambdas.size()) {
    throw DimensionError(
        "uncertainty_check: one stochastic matrix per observable");
  }
  std::vector<Povm> noisy;
  noisy.reserve(ps.size());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    noisy.push_back(coarse_grain(ps[j], lambdas[j]));
  }
  const CriterionResult crit = criterion_at_point(noisy, pt, opts);
  UncertaintyResult res;
  res.t_value = crit.t_value;
  res.threshold = crit.threshold;
  res.verdict = crit.t_value > crit.threshold + opts.tol ? "violates-qm-bound"
                                                         : "within-bound";
  return res;
}

double noise_threshold(const std::vector<Povm>& ps, const SolverOptions& opts) {
  const IncompatReport rep = tau(ps, opts);
  const int d = ps[0].dim();
  if (rep.tau <= opts.tol) return 1.0;
  return std::clamp(std::sqrt((d - 1.0) / rep.tau), 0.0, 1.0);
}

RobustnessResult robustness(const std::vector<Povm>& ps, double tol,
                            const SolverOptions& opts) {
  require_family(ps);
  const int d = ps[0].dim();

  RobustnessResult res;
  const IncompatReport rep = tau(ps, opts);
  res.lower_bound =
      std::max(0.0, std::sqrt(rep.tau / (d - 1.0)) - 1.0);

  const auto feasibility_at = [&](double eps) -> Feasibility {
    std::vector<Povm> smoothed;
    smoothed.reserve(ps.size());
    for (const Povm& p : ps) smoothed.push_back(epsilon_smooth(p, eps));
    return joint_feasibility(smoothed, opts).status;
  };

  const Feasibility at_zero = feasibility_at(0.0);
  if (at_zero == Feasibility::feasible) {
    res.epsilon = 0.0;
    res.log_robustness = 0.0;
    res.bracket = {0.0, 0.0};
    return res;
  }
  if (at_zero == Feasibility::inconclusive) res.inconclusive_band = true;

  // The trivial-POVM limit is always compatible; eps = d is far inside it,
  // and the bracket extends just in case an instance needs more.
  double lo = 0.0;
  double hi = static_cast<double>(d);
  int guard = 0;
  while (feasibility_at(hi) != Feasibility::feasible) {
    hi *= 2.0;
    if (++guard > 6) {
      throw SolverError("robustness: no feasible smoothing level found", 0.0,
                        hi);
    }
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const Feasibility f = feasibility_at(mid);
    if (f == Feasibility::inconclusive) res.inconclusive_band = true;
    if (f == Feasibility::feasible || f == Feasibility::inconclusive) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.epsilon = 0.5 * (lo + hi);
  res.log_robustness = std::log1p(res.epsilon);
  res.bracket = {lo, hi};
  return res;
}

}  // namespace incompat
