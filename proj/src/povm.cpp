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

#include "incompat/povm.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace incompat {

namespace {

void require_same_dim(const Povm& p) {
  for (const Effect& e : p.effects) {
    if (e.op.rows() != p.dim() || e.op.cols() != p.dim()) {
      throw DimensionError("POVM effects have mismatched dimensions");
    }
  }
}

}  // namespace

void require_stochastic(const StochasticMatrix& lambda, double tol) {
  const Eigen::MatrixXd& m = lambda.entries;
  if (m.size() == 0) throw ValidationError("empty stochastic matrix");
  if (m.minCoeff() < -tol) {
    throw ValidationError("stochastic matrix has a negative entry");
  }
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (std::abs(m.col(c).sum() - 1.0) > tol) {
      std::ostringstream os;
      os << "stochastic matrix column " << c << " sums to " << m.col(c).sum();
      throw ValidationError(os.str());
    }
  }
}

void require_doubly_stochastic(const StochasticMatrix& lambda, double tol) {
  require_stochastic(lambda, tol);
  const Eigen::MatrixXd& m = lambda.entries;
  if (m.rows() != m.cols()) {
    throw ValidationError("doubly stochastic matrix must be square");
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (std::abs(m.row(r).sum() - 1.0) > tol) {
      std::ostringstream os;
      os << "row " << r << " of a doubly stochastic matrix sums to "
         << m.row(r).sum();
      throw ValidationError(os.str());
    }
  }
}

bool SharpObservable::nondegenerate() const {
  for (const Projector& p : projectors) {
    if (p.rank != 1) return false;
  }
  return true;
}

ValidationReport validate(const Povm& p, double tol) {
  ValidationReport rep;
  rep.tol = tol;
  if (p.effects.empty() || p.dim() == 0) return rep;
  require_same_dim(p);

  const int d = p.dim();
  double min_eig = std::numeric_limits<double>::infinity();
  double herm_res = 0.0;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const Effect& e : p.effects) {
    herm_res = std::max(herm_res, (e.op - e.op.adjoint()).cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, min_eigenvalue(hermitian_part(e.op)));
    sum += e.op;
  }
  rep.min_effect_eigenvalue = min_eig;
  rep.hermiticity_residual = herm_res;
  rep.completeness_residual =
      (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  rep.hermitian = herm_res <= tol;
  rep.effects_psd = min_eig >= -tol;
  rep.complete = rep.completeness_residual <= tol;
  rep.pass = rep.hermitian && rep.effects_psd && rep.complete;
  return rep;
}

void require_valid(const Povm& p, double tol) {
  const ValidationReport rep = validate(p, tol);
  if (!rep.pass) {
    std::ostringstream os;
    os << "invalid POVM: min effect eigenvalue " << rep.min_effect_eigenvalue
       << ", completeness residual " << rep.completeness_residual;
    throw ValidationError(os.str());
  }
}

Povm coarse_grain(const Povm& p, const StochasticMatrix& lambda) {
  require_stochastic(lambda);
  if (lambda.cols() != p.outcomes()) {
    throw DimensionError(
        "coarse_grain: stochastic matrix columns must match outcome count");
  }
  const int d = p.dim();
  Povm out;
  out.effects.reserve(lambda.rows());
  for (int xi = 0; xi < lambda.rows(); ++xi) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(d, d);
    for (int zeta = 0; zeta < lambda.cols(); ++zeta) {
      op += lambda.entries(xi, zeta) * p.effects[zeta].op;
    }
    out.effects.push_back(Effect{"g" + std::to_string(xi), std::move(op)});
  }
  return out;
}

Povm depolarize(const Povm& p, double eta) {
  if (eta < 0.0 || eta > 1.0) {
    throw ValidationError("depolarize: eta must lie in [0, 1]");
  }
  const int d = p.dim();
  Povm out;
  out.effects.reserve(p.effects.size());
  for (const Effect& e : p.effects) {
    const double w = (1.0 - eta) * e.op.trace().real() / d;
    Eigen::MatrixXcd op = eta * e.op + w * Eigen::MatrixXcd::Identity(d, d);
    out.effects.push_back(Effect{e.label, std::move(op)});
  }
  return out;
}

Povm epsilon_smooth(const Povm& p, double eps) {
  if (eps < 0.0) throw ValidationError("epsilon_smooth: eps must be >= 0");
  return depolarize(p, 1.0 / (1.0 + eps));
}

SharpObservable from_observable(const Eigen::MatrixXcd& h,
                                double degeneracy_tol) {
  const EigenSystem sys = spectral_decompose(h);
  const int d = static_cast<int>(h.rows());
  if (degeneracy_tol < 0.0) {
    const double range = (d > 0) ? sys.values(0) - sys.values(d - 1) : 0.0;
    degeneracy_tol = 1e-8 * std::max(1.0, range);
  }
  SharpObservable obs;
  obs.op = hermitian_part(h);
  int start = 0;
  while (start < d) {
    int end = start + 1;
    while (end < d && sys.values(start) - sys.values(end) <= degeneracy_tol) {
      ++end;
    }
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(d, d);
    for (int k = start; k < end; ++k) {
      proj += sys.vectors.col(k) * sys.vectors.col(k).adjoint();
    }
    const double mean =
        sys.values.segment(start, end - start).sum() / (end - start);
    obs.projectors.push_back(
        SharpObservable::Projector{mean, std::move(proj), end - start});
    start = end;
  }
  return obs;
}

bool pairwise_commute(const std::vector<SharpObservable>& obs, double tol) {
  for (std::size_t a = 0; a < obs.size(); ++a) {
    for (std::size_t b = a; b < obs.size(); ++b) {
      if (obs[a].dim() != obs[b].dim()) {
        throw DimensionError("pairwise_commute: dimension mismatch");
      }
      for (const auto& p : obs[a].projectors) {
        for (const auto& q : obs[b].projectors) {
          const Eigen::MatrixXcd comm = p.proj * q.proj - q.proj * p.proj;
          if (comm.norm() > tol) return false;
        }
      }
    }
  }
  return true;
}

Povm pauli_povm(const Eigen::Vector3d& axis) {
  const Eigen::Matrix2cd a = pauli_dot(axis);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Povm p;
  p.effects.push_back(Effect{"+", 0.5 * (id + a)});
  p.effects.push_back(Effect{"-", 0.5 * (id - a)});
  return p;
}

std::array<Povm, 3> qubit_mub_triple() {
  return {pauli_povm(Eigen::Vector3d::UnitX()),
          pauli_povm(Eigen::Vector3d::UnitY()),
          pauli_povm(Eigen::Vector3d::UnitZ())};
}

std::pair<Povm, Povm> fourier_pair(int d) {
  if (d < 2) throw DimensionError("fourier_pair needs d >= 2");
  Povm comp, four;
  Eigen::MatrixXcd f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const double phase = 2.0 * std::numbers::pi * j * k / d;
      f(j, k) = std::polar(norm, phase);
    }
  }
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXcd ek = Eigen::MatrixXcd::Zero(d, d);
    ek(k, k) = 1.0;
    comp.effects.push_back(Effect{std::to_string(k), ek});
    const Eigen::VectorXcd col = f.col(k);
    four.effects.push_back(Effect{std::to_string(k), col * col.adjoint()});
  }
  return {std::move(comp), std::move(four)};
}

Povm trine_qubit() {
  Povm p;
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 3.0;
    const Eigen::Vector3d n(std::sin(angle), 0.0, std::cos(angle));
    p.effects.push_back(Effect{
        "t" + std::to_string(k),
        (Eigen::Matrix2cd::Identity() + pauli_dot(n)) / 3.0});
  }
  return p;
}

Povm sharp_povm(const SharpObservable& obs) {
  Povm p;
  p.effects.reserve(obs.projectors.size());
  for (std::size_t k = 0; k < obs.projectors.size(); ++k) {
    p.effects.push_back(Effect{"e" + std::to_string(k), obs.projectors[k].proj});
  }
  return p;
}

Povm conjugate(const Povm& p, const Eigen::MatrixXcd& u) {
  Povm out;
  out.effects.reserve(p.effects.size());
  for (const Effect& e : p.effects) {
    out.effects.push_back(Effect{e.label, u * e.op * u.adjoint()});
  }
  return out;
}

}  // namespace incompat
