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

#include "incompat/sdp.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "incompat/operator_core.hpp"

// Both solves share one feasible-start predictor-corrector interior-point
// core over a linear matrix inequality
//
//     minimize c'y   subject to   S_b(y) = sum_i y_i F_i^b - F0^b >= 0
//
// with Hermitian blocks, whose dual is
//
//     maximize sum_b tr(F0^b Z_b)   subject to   sum_b tr(F_i^b Z_b) = c_i,
//                                                Z_b >= 0.
//
// Both problems here admit strictly feasible starts on both sides, so the
// iterates keep exact primal and dual feasibility and the duality gap
// sum_b <S_b, Z_b> is the only quantity driven to zero. The search direction
// is the HKM linearization of S Z = mu 1 with a Mehrotra second-order
// correction; the Schur complement H_ik = sum_b Re tr(F_i S^-1 F_k Z) is
// assembled by each problem class and solved by partial-pivot LU.

namespace incompat {

namespace {

template <typename Scalar>
using BlockMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Largest step alpha in [0, cap] keeping S + alpha * dS positive definite,
// computed from the spectrum of L^-1 dS L^-H where S = L L^H.
template <typename Scalar>
double max_step(const BlockMatrix<Scalar>& s, const BlockMatrix<Scalar>& ds,
                double cap) {
  Eigen::LLT<BlockMatrix<Scalar>> llt(s);
  if (llt.info() != Eigen::Success) return 0.0;
  BlockMatrix<Scalar> w = llt.matrixL().solve(ds);
  w = llt.matrixL().solve(w.adjoint().eval()).adjoint();
  Eigen::SelfAdjointEigenSolver<BlockMatrix<Scalar>> es(
      0.5 * (w + w.adjoint().eval()), Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues().minCoeff();
  if (lam_min >= 0.0) return cap;
  return std::min(cap, -1.0 / lam_min);
}

template <typename Scalar>
double inner(const BlockMatrix<Scalar>& a, const BlockMatrix<Scalar>& b) {
  return Eigen::numext::real((a.adjoint() * b).trace());
}

struct IpmStatus {
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double gap = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Feasible-start HKM predictor-corrector. The Problem supplies the LMI data:
//   Scalar, num_vars, num_blocks, cost(),
//   lmi(y, b)          -> S_b(y)
//   apply(dy, b)       -> sum_i dy_i F_i^b
//   adjoint(blocks)    -> (sum_b Re tr(F_i^b B_b))_i   for arbitrary B_b
//   schur(Sinv, Z)     -> H_ik = sum_b Re tr(F_i^b Sinv_b F_k^b Z_b)
//   initial_y(), initial_z()
template <typename Problem>
IpmStatus run_ipm(const Problem& prob, Eigen::VectorXd& y,
                  std::vector<BlockMatrix<typename Problem::Scalar>>& z,
                  double gap_tol, int max_iter) {
  using Scalar = typename Problem::Scalar;
  using Mat = BlockMatrix<Scalar>;

  const int nblocks = prob.num_blocks();
  const Eigen::VectorXd c = prob.cost();
  double ntot = 0.0;
  for (int b = 0; b < nblocks; ++b) ntot += prob.block_dim(b);

  y = prob.initial_y();
  z = prob.initial_z();
  std::vector<Mat> s(nblocks), sinv(nblocks);

  IpmStatus st;
  for (int iter = 0; iter < max_iter; ++iter) {
    st.iterations = iter;

    double gap_inner = 0.0;
    for (int b = 0; b < nblocks; ++b) {
      s[b] = prob.lmi(y, b);
      Eigen::LLT<Mat> llt(s[b]);
      if (llt.info() != Eigen::Success) {
        return st;  // lost interiority; report best so far
      }
      sinv[b] = llt.solve(Mat::Identity(s[b].rows(), s[b].cols()));
      sinv[b] = Mat(0.5 * (sinv[b] + sinv[b].adjoint().eval()));
      gap_inner += inner(s[b], z[b]);
    }

    const Eigen::VectorXd adj_z = prob.adjoint(z);
    st.primal_obj = c.dot(y);
    st.dual_obj = y.dot(adj_z) - gap_inner;
    st.gap = st.primal_obj - st.dual_obj;
    st.dual_residual = (c - adj_z).template lpNorm<Eigen::Infinity>();

    const double scale = 1.0 + std::abs(st.primal_obj) + std::abs(st.dual_obj);
    if (std::abs(st.gap) <= gap_tol * scale && st.dual_residual <= gap_tol) {
      st.converged = true;
      return st;
    }

    const double mu = gap_inner / ntot;

    Eigen::MatrixXd h = prob.schur(sinv, z);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(h);
    const Eigen::VectorXd g = prob.adjoint(sinv);

    // Predictor: affine direction, target mu_hat = 0.
    const Eigen::VectorXd dy_aff = lu.solve(-c);
    std::vector<Mat> ds_aff(nblocks), dz_aff(nblocks);
    double ap_aff = 1.0, ad_aff = 1.0;
    for (int b = 0; b < nblocks; ++b) {
      ds_aff[b] = prob.apply(dy_aff, b);
      Mat t = sinv[b] * ds_aff[b] * z[b];
      dz_aff[b] = -z[b] - Mat(0.5 * (t + t.adjoint().eval()));
      ap_aff = std::min(ap_aff, max_step<Scalar>(s[b], ds_aff[b], 1.0));
      ad_aff = std::min(ad_aff, max_step<Scalar>(z[b], dz_aff[b], 1.0));
    }
    double mu_aff = 0.0;
    for (int b = 0; b < nblocks; ++b) {
      mu_aff += inner<Scalar>(s[b] + ap_aff * ds_aff[b],
                              z[b] + ad_aff * dz_aff[b]);
    }
    mu_aff = std::max(0.0, mu_aff / ntot);
    const double ratio = mu_aff / mu;
    const double sigma = std::clamp(ratio * ratio * ratio, 1e-10, 1.0);

    // Corrector with the Mehrotra second-order term.
    std::vector<Mat> corr(nblocks);
    for (int b = 0; b < nblocks; ++b) {
      corr[b] = sinv[b] * ds_aff[b] * dz_aff[b];
    }
    const Eigen::VectorXd h_corr = prob.adjoint(corr);
    const Eigen::VectorXd dy = lu.solve(sigma * mu * g - c - h_corr);

    std::vector<Mat> ds(nblocks), dz(nblocks);
    double ap = 1.0, ad = 1.0;
    for (int b = 0; b < nblocks; ++b) {
      ds[b] = prob.apply(dy, b);
      Mat t = sinv[b] * ds[b] * z[b];
      dz[b] = sigma * mu * sinv[b] - z[b] -
              Mat(0.5 * (t + t.adjoint().eval())) -
              Mat(0.5 * (corr[b] + corr[b].adjoint().eval()));
      ap = std::min(ap, max_step<Scalar>(s[b], ds[b], 1.0 / 0.98));
      ad = std::min(ad, max_step<Scalar>(z[b], dz[b], 1.0 / 0.98));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);
    if (ap <= 1e-14 && ad <= 1e-14) {
      return st;  // stalled
    }

    y += ap * dy;
    for (int b = 0; b < nblocks; ++b) {
      z[b] += ad * dz[b];
      z[b] = Mat(0.5 * (z[b] + z[b].adjoint().eval()));
    }
  }
  return st;
}

// min tr X s.t. X >= M_j: y = svec(X) over the orthonormal symmetric basis,
// one slack block per M_j, all with the same coefficient matrices.
class MinTraceProblem {
 public:
  using Scalar = double;

  explicit MinTraceProblem(const std::vector<Eigen::MatrixXd>& ms)
      : ms_(ms), n_(static_cast<int>(ms.at(0).rows())) {
    p_ = n_ * (n_ + 1) / 2;
  }

  int num_vars() const { return p_; }
  int num_blocks() const { return static_cast<int>(ms_.size()); }
  int block_dim(int) const { return n_; }

  Eigen::VectorXd cost() const { return svec(Eigen::MatrixXd::Identity(n_, n_)); }

  Eigen::MatrixXd lmi(const Eigen::VectorXd& y, int b) const {
    return unsvec(y) - ms_[b];
  }

  Eigen::MatrixXd apply(const Eigen::VectorXd& dy, int) const {
    return unsvec(dy);
  }

  Eigen::VectorXd adjoint(const std::vector<Eigen::MatrixXd>& blocks) const {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n_, n_);
    for (const Eigen::MatrixXd& blk : blocks) sum += blk;
    return svec(Eigen::MatrixXd(0.5 * (sum + sum.transpose())));
  }

  // H = sum_j skron(Sinv_j, Z_j): the svec matrix of
  // M -> (Sinv M Z + Z M Sinv)/2.
  Eigen::MatrixXd schur(const std::vector<Eigen::MatrixXd>& sinv,
                        const std::vector<Eigen::MatrixXd>& z) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p_, p_);
    for (std::size_t j = 0; j < ms_.size(); ++j) {
      accumulate_skron(sinv[j], z[j], h);
    }
    return h;
  }

  Eigen::VectorXd initial_y() const {
    double top = 1.0;
    for (const Eigen::MatrixXd& m : ms_) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m,
                                                        Eigen::EigenvaluesOnly);
      top = std::max(top, es.eigenvalues().maxCoeff());
    }
    return svec(Eigen::MatrixXd(2.0 * top * Eigen::MatrixXd::Identity(n_, n_)));
  }

  std::vector<Eigen::MatrixXd> initial_z() const {
    const double m = static_cast<double>(ms_.size());
    return std::vector<Eigen::MatrixXd>(
        ms_.size(), Eigen::MatrixXd::Identity(n_, n_) / m);
  }

  Eigen::VectorXd svec(const Eigen::MatrixXd& m) const {
    static const double rt2 = std::sqrt(2.0);
    Eigen::VectorXd v(p_);
    int idx = 0;
    for (int i = 0; i < n_; ++i) {
      v(idx++) = m(i, i);
      for (int j = i + 1; j < n_; ++j) v(idx++) = rt2 * m(i, j);
    }
    return v;
  }

  Eigen::MatrixXd unsvec(const Eigen::VectorXd& v) const {
    static const double inv_rt2 = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd m(n_, n_);
    int idx = 0;
    for (int i = 0; i < n_; ++i) {
      m(i, i) = v(idx++);
      for (int j = i + 1; j < n_; ++j) {
        m(i, j) = m(j, i) = inv_rt2 * v(idx++);
      }
    }
    return m;
  }

 private:
  // h += svec representation of M -> (A M B + B M A)/2 for symmetric A, B.
  void accumulate_skron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        Eigen::MatrixXd& h) const {
    static const double inv_rt2 = 1.0 / std::sqrt(2.0);
    int row = 0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i; j < n_; ++j, ++row) {
        const double ci = (i == j) ? 0.5 : inv_rt2;
        int col = 0;
        for (int k = 0; k < n_; ++k) {
          for (int l = k; l < n_; ++l, ++col) {
            const double ck = (k == l) ? 0.5 : inv_rt2;
            h(row, col) += ci * ck *
                           (a(i, k) * b(j, l) + a(i, l) * b(j, k) +
                            b(i, k) * a(j, l) + b(i, l) * a(j, k));
          }
        }
      }
    }
  }

  const std::vector<Eigen::MatrixXd>& ms_;
  int n_;
  int p_;
};

// Phase-I joint measurability: variables are the null-space coordinates of
// the marginal map plus the slack level s, one Hermitian block per outcome
// tuple: M0_k + sum_{l,a} u_la C_kl B_a - s >= 0, maximizing s.
class JointProblem {
 public:
  using Scalar = std::complex<double>;

  JointProblem(std::vector<Eigen::MatrixXcd> m0, Eigen::MatrixXd null_coef,
               const OperatorBasis& basis)
      : m0_(std::move(m0)),
        c_(std::move(null_coef)),
        basis_(basis),
        d_(basis.dim),
        nblocks_(static_cast<int>(m0_.size())),
        nnull_(static_cast<int>(c_.cols())) {
    p_ = nnull_ * d_ * d_ + 1;
  }

  int num_vars() const { return p_; }
  int num_blocks() const { return nblocks_; }
  int block_dim(int) const { return d_; }

  Eigen::VectorXd cost() const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(p_);
    c(p_ - 1) = -1.0;  // minimize -s
    return c;
  }

  Eigen::MatrixXcd lmi(const Eigen::VectorXd& y, int k) const {
    return m0_[k] + shift(y, k);
  }

  Eigen::MatrixXcd apply(const Eigen::VectorXd& dy, int k) const {
    return shift(dy, k);
  }

  Eigen::VectorXd adjoint(const std::vector<Eigen::MatrixXcd>& blocks) const {
    const int nb = d_ * d_;
    Eigen::MatrixXd coords(nb, nblocks_);
    double trace_sum = 0.0;
    for (int k = 0; k < nblocks_; ++k) {
      for (int a = 0; a < nb; ++a) {
        coords(a, k) = (basis_.elements[a] * blocks[k]).trace().real();
      }
      trace_sum += blocks[k].trace().real();
    }
    Eigen::VectorXd out(p_);
    Eigen::MatrixXd folded = coords * c_;  // nb x nnull
    for (int l = 0; l < nnull_; ++l) {
      out.segment(l * nb, nb) = folded.col(l);
    }
    out(p_ - 1) = -trace_sum;
    return out;
  }

  Eigen::MatrixXd schur(const std::vector<Eigen::MatrixXcd>& sinv,
                        const std::vector<Eigen::MatrixXcd>& z) const {
    const int nb = d_ * d_;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p_, p_);
    Eigen::MatrixXd q(nb, nb);
    Eigen::VectorXd q1(nb), q2(nb);
    std::vector<Eigen::MatrixXcd> v(nb);
    for (int k = 0; k < nblocks_; ++k) {
      for (int a = 0; a < nb; ++a) {
        v[a] = sinv[k] * basis_.elements[a] * z[k];
      }
      for (int a = 0; a < nb; ++a) {
        for (int a2 = 0; a2 < nb; ++a2) {
          q(a, a2) = (basis_.elements[a] * v[a2]).trace().real();
        }
      }
      const Eigen::MatrixXcd w1 = sinv[k] * z[k];
      const Eigen::MatrixXcd w2 = z[k] * sinv[k];
      for (int a = 0; a < nb; ++a) {
        q1(a) = (basis_.elements[a] * w1).trace().real();
        q2(a) = (basis_.elements[a] * w2).trace().real();
      }
      const double ss = w1.trace().real();
      for (int l = 0; l < nnull_; ++l) {
        const double ckl = c_(k, l);
        for (int l2 = 0; l2 < nnull_; ++l2) {
          h.block(l * nb, l2 * nb, nb, nb) += ckl * c_(k, l2) * q;
        }
        h.block(l * nb, p_ - 1, nb, 1) -= ckl * q1;
        h.block(p_ - 1, l * nb, 1, nb) -= ckl * q2.transpose();
      }
      h(p_ - 1, p_ - 1) += ss;
    }
    return h;
  }

  Eigen::VectorXd initial_y() const {
    double lo = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (const Eigen::MatrixXcd& m : m0_) {
      lo = std::min(lo, min_eigenvalue(m));
      scale = std::max(scale, m.cwiseAbs().maxCoeff());
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(p_);
    y(p_ - 1) = lo - 0.1 * scale;
    return y;
  }

  std::vector<Eigen::MatrixXcd> initial_z() const {
    return std::vector<Eigen::MatrixXcd>(
        nblocks_,
        Eigen::MatrixXcd::Identity(d_, d_) / (static_cast<double>(nblocks_) * d_));
  }

 private:
  Eigen::MatrixXcd shift(const Eigen::VectorXd& y, int k) const {
    const int nb = d_ * d_;
    Eigen::MatrixXcd out = -y(p_ - 1) * Eigen::MatrixXcd::Identity(d_, d_);
    for (int l = 0; l < nnull_; ++l) {
      const double ckl = c_(k, l);
      if (ckl == 0.0) continue;
      for (int a = 0; a < nb; ++a) {
        const double w = ckl * y(l * nb + a);
        if (w != 0.0) out += w * basis_.elements[a];
      }
    }
    return out;
  }

  std::vector<Eigen::MatrixXcd> m0_;
  Eigen::MatrixXd c_;  // nblocks x nnull, orthonormal null vectors of P
  const OperatorBasis& basis_;
  int d_;
  int nblocks_;
  int nnull_;
  int p_;
};

double min_eig_sym(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void require_psd_inputs(const std::vector<Eigen::MatrixXd>& ms, double tol) {
  if (ms.empty()) {
    throw ValidationError("min_trace_dominating needs at least one matrix");
  }
  const Eigen::Index n = ms[0].rows();
  for (const Eigen::MatrixXd& m : ms) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionError("min_trace_dominating: matrix sizes differ");
    }
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
      throw ValidationError("min_trace_dominating: input is not symmetric");
    }
    const double lam = min_eig_sym(m);
    const double cut = tol * std::max(1.0, m.cwiseAbs().maxCoeff());
    if (lam < -std::max(cut, 1e-9)) {
      throw NotPsdError("min_trace_dominating: input has negative eigenvalue",
                        lam);
    }
  }
}

void finalize(SdpSolution& sol, const std::vector<Eigen::MatrixXd>& ms) {
  const Eigen::Index n = sol.primal.rows();
  double pinf = 0.0;
  for (const Eigen::MatrixXd& m : ms) {
    pinf = std::max(pinf, -min_eig_sym(sol.primal - m));
  }
  sol.primal_infeasibility = std::max(0.0, pinf);

  Eigen::MatrixXd ysum = Eigen::MatrixXd::Zero(n, n);
  double dual_psd = 0.0;
  double dual_obj = 0.0;
  for (std::size_t j = 0; j < sol.duals.size(); ++j) {
    ysum += sol.duals[j];
    dual_psd = std::max(0.0, std::max(dual_psd, -min_eig_sym(sol.duals[j])));
    dual_obj += (ms[j] * sol.duals[j]).trace();
  }
  const double sum_res =
      (ysum - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  sol.dual_infeasibility = std::max(sum_res, dual_psd);
  sol.value = sol.primal.trace();
  sol.gap = std::abs(sol.value - dual_obj);

  const double scale = 1.0 + std::abs(sol.value);
  sol.certified = sol.primal_infeasibility <= 10.0 * sol.tol * scale &&
                  sol.dual_infeasibility <= 10.0 * sol.tol &&
                  sol.gap <= 10.0 * sol.tol * scale;
}

// Spectral split of m1 - m2 used by the two-matrix closed form. Eigenvalues
// within cut of zero go to the kernel projector.
struct SignSplit {
  Eigen::MatrixXd abs;
  Eigen::MatrixXd pos;   // projector
  Eigen::MatrixXd neg;   // projector
  Eigen::MatrixXd zero;  // projector
};

SignSplit sign_split(const Eigen::MatrixXd& diff, double cut) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (diff + diff.transpose()));
  const Eigen::VectorXd vals = es.eigenvalues();
  const Eigen::MatrixXd vecs = es.eigenvectors();
  const Eigen::Index n = vals.size();
  Eigen::VectorXd avals(n), pvals(n), nvals(n), zvals(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    avals(k) = std::abs(vals(k));
    pvals(k) = vals(k) > cut ? 1.0 : 0.0;
    nvals(k) = vals(k) < -cut ? 1.0 : 0.0;
    zvals(k) = (pvals(k) == 0.0 && nvals(k) == 0.0) ? 1.0 : 0.0;
  }
  const auto mk = [&](const Eigen::VectorXd& v) -> Eigen::MatrixXd {
    return vecs * v.asDiagonal() * vecs.transpose();
  };
  return SignSplit{mk(avals), mk(pvals), mk(nvals), mk(zvals)};
}

}  // namespace

SdpSolution min_trace_dominating(const std::vector<Eigen::MatrixXd>& ms,
                                 double tol) {
  SolverOptions opts;
  opts.tol = tol;
  return min_trace_dominating(ms, opts);
}

SdpSolution min_trace_dominating(const std::vector<Eigen::MatrixXd>& ms,
                                 const SolverOptions& opts) {
  require_psd_inputs(ms, opts.tol);
  const int n = static_cast<int>(ms[0].rows());
  const int m = static_cast<int>(ms.size());

  SdpSolution sol;
  sol.tol = opts.tol;

  double top = 0.0;
  for (const Eigen::MatrixXd& mat : ms) {
    top = std::max(top, mat.cwiseAbs().maxCoeff());
  }
  if (top == 0.0) {
    // All inputs vanish: X = 0 with any dual partition of the identity.
    sol.primal = Eigen::MatrixXd::Zero(n, n);
    sol.duals.assign(ms.size(), Eigen::MatrixXd::Identity(n, n) / m);
    finalize(sol, ms);
    return sol;
  }

  if (!opts.force_iterative && m == 1) {
    sol.primal = 0.5 * (ms[0] + ms[0].transpose());
    sol.duals = {Eigen::MatrixXd::Identity(n, n)};
    finalize(sol, ms);
    return sol;
  }

  if (!opts.force_iterative && m == 2) {
    const Eigen::MatrixXd diff = ms[0] - ms[1];
    const SignSplit split = sign_split(diff, 0.0);
    sol.primal = 0.5 * (ms[0] + ms[1]) + 0.5 * split.abs;
    sol.duals = {split.pos + 0.5 * split.zero, split.neg + 0.5 * split.zero};
    finalize(sol, ms);
    return sol;
  }

  MinTraceProblem prob(ms);
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> z;
  const double gap_tol = std::min(opts.tol, 1e-9);
  const IpmStatus st = run_ipm(prob, y, z, gap_tol, opts.max_iter);
  if (!st.converged) {
    std::ostringstream os;
    os << "min_trace_dominating did not converge in " << st.iterations + 1
       << " iterations; best bounds [" << st.dual_obj << ", " << st.primal_obj
       << "]";
    throw SolverError(os.str(), st.primal_obj, st.dual_obj);
  }
  sol.primal = prob.unsvec(y);
  sol.duals = std::move(z);
  sol.iterations = st.iterations;
  finalize(sol, ms);
  return sol;
}

CertificateReport verify_solution(const SdpSolution& sol,
                                  const std::vector<Eigen::MatrixXd>& ms,
                                  double tol) {
  CertificateReport rep;
  if (ms.empty() || sol.duals.size() != ms.size()) {
    return rep;
  }
  const Eigen::Index n = sol.primal.rows();
  double pm = std::numeric_limits<double>::infinity();
  for (const Eigen::MatrixXd& m : ms) {
    pm = std::min(pm, min_eig_sym(sol.primal - m));
  }
  rep.primal_margin = pm;

  Eigen::MatrixXd ysum = Eigen::MatrixXd::Zero(n, n);
  double dual_obj = 0.0;
  double dpsd = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ms.size(); ++j) {
    ysum += sol.duals[j];
    dpsd = std::min(dpsd, min_eig_sym(sol.duals[j]));
    dual_obj += (ms[j] * sol.duals[j]).trace();
  }
  rep.dual_psd_margin = dpsd;
  rep.dual_sum_residual =
      (ysum - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  rep.gap = std::abs(sol.primal.trace() - dual_obj);

  const double scale = 1.0 + std::abs(sol.value);
  rep.pass = rep.primal_margin >= -10.0 * tol * scale &&
             rep.dual_psd_margin >= -10.0 * tol &&
             rep.dual_sum_residual <= 10.0 * tol &&
             rep.gap <= 10.0 * tol * scale;
  return rep;
}

JointSolution joint_feasibility(const std::vector<Povm>& ps, double tol,
                                int max_iter) {
  SolverOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return joint_feasibility(ps, opts);
}

JointSolution joint_feasibility(const std::vector<Povm>& ps,
                                const SolverOptions& opts) {
  if (ps.empty()) throw ValidationError("joint_feasibility needs observables");
  const int d = ps[0].dim();
  long long ntuples = 1;
  for (const Povm& p : ps) {
    require_valid(p, std::max(kPsdTol, opts.tol));
    if (p.dim() != d) {
      throw DimensionError("joint_feasibility: dimension mismatch");
    }
    ntuples *= p.outcomes();
    if (ntuples > opts.outcome_cap) {
      std::ostringstream os;
      os << "outcome-tuple count exceeds the cap of " << opts.outcome_cap;
      throw ValidationError(os.str());
    }
  }
  const int nt = static_cast<int>(ntuples);
  const int nobs = static_cast<int>(ps.size());

  // Row-major strides over the outcome tuple.
  std::vector<int> strides(nobs, 1);
  for (int j = nobs - 2; j >= 0; --j) {
    strides[j] = strides[j + 1] * ps[j + 1].outcomes();
  }

  // Marginal pattern P: one row per (observable, outcome), one column per
  // tuple; entry 1 iff the tuple lands in that outcome.
  int nrows = 0;
  for (const Povm& p : ps) nrows += p.outcomes();
  Eigen::MatrixXd pattern = Eigen::MatrixXd::Zero(nrows, nt);
  {
    int row = 0;
    for (int j = 0; j < nobs; ++j) {
      for (int xi = 0; xi < ps[j].outcomes(); ++xi, ++row) {
        for (int k = 0; k < nt; ++k) {
          if ((k / strides[j]) % ps[j].outcomes() == xi) pattern(row, k) = 1.0;
        }
      }
    }
  }

  const OperatorBasis basis = OperatorBasis::gell_mann(d);
  const int nb = d * d;

  // Stacked coordinates of the target marginals, one column per basis
  // element.
  Eigen::MatrixXd rhs(nrows, nb);
  {
    int row = 0;
    for (const Povm& p : ps) {
      for (const Effect& e : p.effects) {
        rhs.row(row++) = vectorize(e.op, basis).transpose();
      }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      pattern, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const double sv_cut = 1e-10 * std::max(1.0, svd.singularValues()(0));
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > sv_cut) {
    ++rank;
  }
  const Eigen::MatrixXd null_coef =
      svd.matrixV().rightCols(nt - rank);  // nt x nnull, orthonormal

  // Least-squares particular solution per basis coordinate.
  Eigen::MatrixXd coords(nt, nb);
  {
    const Eigen::MatrixXd ut_b = svd.matrixU().leftCols(rank).transpose() * rhs;
    const Eigen::VectorXd inv_sv =
        svd.singularValues().head(rank).cwiseInverse();
    coords = svd.matrixV().leftCols(rank) * inv_sv.asDiagonal() * ut_b;
  }
  const double residual =
      (pattern * coords - rhs).cwiseAbs().maxCoeff();
  if (residual > 100.0 * std::max(kPsdTol, opts.tol)) {
    throw ValidationError(
        "joint_feasibility: the marginal constraints are inconsistent "
        "(inputs are not all normalized to the same identity)");
  }

  std::vector<Eigen::MatrixXcd> m0(nt);
  for (int k = 0; k < nt; ++k) {
    m0[k] = devectorize(coords.row(k).transpose(), basis);
  }

  JointProblem prob(std::move(m0), null_coef, basis);
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXcd> z;
  const double gap_tol = std::min(opts.tol, 1e-9);
  const IpmStatus st = run_ipm(prob, y, z, gap_tol, opts.max_iter);

  JointSolution out;
  out.iterations = st.iterations;
  out.marginal_residual = residual;
  // Maximizing s means primal_obj = -s at the iterate (a certified feasible
  // slack) and -dual_obj is the certified upper bound.
  out.slack = -st.primal_obj;
  out.slack_upper = -st.dual_obj;
  if (!st.converged && st.iterations == 0) {
    throw SolverError("joint_feasibility: interior-point solve failed at start",
                      st.primal_obj, st.dual_obj);
  }

  Povm joint;
  joint.effects.reserve(nt);
  double joint_min_eig = std::numeric_limits<double>::infinity();
  for (int k = 0; k < nt; ++k) {
    std::string label;
    for (int j = 0; j < nobs; ++j) {
      const int xi = (k / strides[j]) % ps[j].outcomes();
      if (j > 0) label += ",";
      label += ps[j].effects[xi].label;
    }
    // The LMI slack is M_k - s; add the slack level back.
    Eigen::MatrixXcd eff = prob.lmi(y, k) +
                           y(y.size() - 1) * Eigen::MatrixXcd::Identity(d, d);
    joint_min_eig = std::min(joint_min_eig, min_eigenvalue(eff));
    joint.effects.push_back(Effect{std::move(label), std::move(eff)});
  }

  if (out.slack > opts.tol) {
    out.status = Feasibility::feasible;
    out.joint = std::move(joint);
  } else if (out.slack_upper < -opts.tol) {
    out.status = Feasibility::infeasible;
    out.certificate = std::move(z);
  } else if (joint_min_eig >= -opts.tol && residual <= opts.tol) {
    // The optimum sits on the boundary (sharp inputs always do: any joint
    // has singular effects), but the iterate itself is an explicit joint
    // observable within tolerance, which settles feasibility directly.
    out.status = Feasibility::feasible;
    out.slack = joint_min_eig;
    out.joint = std::move(joint);
  } else {
    out.status = Feasibility::inconclusive;
  }
  return out;
}

}  // namespace incompat
