#include <chrono>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ppr/itersolve.hpp"
#include "ppr/kernels.hpp"

namespace ppr::itersolve {

RVec lifted_forward(const LiftedProblem& prob, const CMat& xi_matrix) {
  const CMatRow w = prob.C * xi_matrix;
  RVec out(prob.rows());
  kernels::active().row_inner_real(w.data(), prob.C.data(), static_cast<std::size_t>(prob.C.rows()),
                                   static_cast<std::size_t>(prob.C.cols()), out.data());
  return out;
}

namespace {

// A^*(r) = sum_r r_r c_r c_r^H
CMat lifted_adjoint(const LiftedProblem& prob, const RVec& r) {
  return prob.C.adjoint() * (r.asDiagonal() * prob.C);
}

double lipschitz(const LiftedProblem& prob) {
  const Eigen::Index n = prob.C.cols();
  CMat z = CMat::Identity(n, n) / std::sqrt(static_cast<double>(n));
  double L = 0.0;
  for (int it = 0; it < 50; ++it) {
    z = lifted_adjoint(prob, lifted_forward(prob, z));
    L = z.norm();
    if (L == 0.0) return 1.0;
    z /= L;
  }
  return L;
}

// prox of t * lambda * ||.||_* restricted to the PSD cone.
CMat prox_psd(const CMat& x, double shrink) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (x + x.adjoint()));
  const RVec& ev = es.eigenvalues();
  const CMat& U = es.eigenvectors();
  CMat out = CMat::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double s = ev(i) - shrink;
    if (s > 0.0) out.noalias() += s * U.col(i) * U.col(i).adjoint();
  }
  return out;
}

}  // namespace

double sdp_objective(const LiftedProblem& prob, const CMat& xi_matrix, double lambda) {
  const RVec r = lifted_forward(prob, xi_matrix) - prob.y;
  return 0.5 * r.squaredNorm() + lambda * xi_matrix.trace().real();
}

CVec rank1_factor(const CMat& xi_matrix) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (xi_matrix + xi_matrix.adjoint()));
  const Eigen::Index n = xi_matrix.rows();
  const double top = es.eigenvalues()(n - 1);
  if (!(top > 0.0)) return CVec::Zero(n);
  return std::sqrt(top) * es.eigenvectors().col(n - 1);
}

SdpResult sdp_solve(const LiftedProblem& prob, const SdpOptions& opts) {
  require(opts.lambda >= 0.0, "sdp_solve: lambda must be nonnegative");
  const auto start = std::chrono::steady_clock::now();
  const Eigen::Index n = prob.C.cols();

  CMat xi = CMat::Zero(n, n);
  CMat psi = xi;
  double eta = 1.0;
  double t = 1.0 / lipschitz(prob);
  SdpResult out;

  for (int k = 1; k <= opts.max_iter; ++k) {
    const RVec rpsi = lifted_forward(prob, psi) - prob.y;
    const double fpsi = 0.5 * rpsi.squaredNorm();
    const CMat grad = lifted_adjoint(prob, rpsi);

    CMat z, xhat;
    RVec rz;
    double fz = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      xhat = psi - t * grad;
      z = prox_psd(xhat, t * opts.lambda);
      rz = lifted_forward(prob, z) - prob.y;
      fz = 0.5 * rz.squaredNorm();
      const CMat d = z - psi;
      const double model = fpsi + (grad.adjoint() * d).trace().real() + d.squaredNorm() / (2.0 * t);
      if (fz <= model + 1e-14 * std::abs(model)) break;
      t *= 0.5;
    }
    if (!std::isfinite(fz) || !z.allFinite()) fail(ErrorKind::Diverged, "diverged: SDP iterates are not finite");

    // Optimality residual grad f(z) + subgradient, normalised.
    const CMat gz = lifted_adjoint(prob, rz);
    const CMat sub = (xhat - z) / t;
    const double scale = std::max(gz.norm(), sub.norm());
    const double residual = scale > 0.0 ? (gz + sub).norm() / scale : 0.0;

    const double eta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * eta * eta));
    psi = z + ((eta - 1.0) / eta_next) * (z - xi);
    xi = z;
    eta = eta_next;

    if (opts.on_iterate) opts.on_iterate(k, xi);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.trace.push_back({k, fz + opts.lambda * xi.trace().real(), residual, secs});
    out.iterations = k;
    if (residual < opts.tol) {
      out.converged = true;
      break;
    }
  }
  out.lifted = xi;
  out.signal = sigmodel::BivariateSignal::from_stacked(rank1_factor(xi));
  return out;
}

}  // namespace ppr::itersolve
