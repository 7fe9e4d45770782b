#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ppr/itersolve.hpp"
#include "ppr/kernels.hpp"

namespace ppr::itersolve {

namespace {

std::size_t urows(const LiftedProblem& p) { return static_cast<std::size_t>(p.C.rows()); }
std::size_t ucols(const LiftedProblem& p) { return static_cast<std::size_t>(p.C.cols()); }

double quartic(const std::array<double, 5>& q, double mu) {
  return (((q[4] * mu + q[3]) * mu + q[2]) * mu + q[1]) * mu + q[0];
}

// Real roots of d/dmu of the quartic.
std::vector<double> critical_points(const std::array<double, 5>& q) {
  const double c3 = 4.0 * q[4], c2 = 3.0 * q[3], c1 = 2.0 * q[2], c0 = q[1];
  std::vector<double> roots;
  const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
  const double p = b - a * a / 3.0;
  const double r = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = r * r / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    roots.push_back(std::cbrt(-r / 2.0 + s) + std::cbrt(-r / 2.0 - s) - a / 3.0);
  } else if (p == 0.0) {
    roots.push_back(-a / 3.0);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * r / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - a / 3.0);
  }
  // Newton polish against the unnormalised cubic.
  for (double& x : roots) {
    for (int it = 0; it < 3; ++it) {
      const double f = ((c3 * x + c2) * x + c1) * x + c0;
      const double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
      if (df == 0.0) break;
      const double nx = x - f / df;
      const double nf = ((c3 * nx + c2) * nx + c1) * nx + c0;
      if (!(std::abs(nf) < std::abs(f))) break;
      x = nx;
    }
  }
  return roots;
}

}  // namespace

double wf_objective(const LiftedProblem& prob, const CVec& xi) {
  const CVec u = apply(prob, xi);
  CVec w(u.size());
  return kernels::active().intensity_residual(u.data(), prob.y.data(), urows(prob), w.data());
}

CVec wf_gradient(const LiftedProblem& prob, const CVec& xi) {
  const CVec u = apply(prob, xi);
  CVec w(u.size());
  kernels::active().intensity_residual(u.data(), prob.y.data(), urows(prob), w.data());
  return apply_adjoint(prob, w);
}

std::array<double, 5> step_polynomial(const LiftedProblem& prob, const CVec& psi, const CVec& g) {
  const CVec u = apply(prob, psi);
  const CVec v = apply(prob, g);
  std::array<double, 5> q{};
  kernels::active().step_polynomial(u.data(), v.data(), prob.y.data(), urows(prob), q.data());
  return q;
}

double optimal_step_from_polynomial(const std::array<double, 5>& q) {
  if (!(q[4] > 0.0)) return 0.0;
  double best = 0.0, fbest = q[0];
  for (double mu : critical_points(q)) {
    if (!(mu > 0.0) || !std::isfinite(mu)) continue;
    const double f = quartic(q, mu);
    if (f < fbest) {
      fbest = f;
      best = mu;
    }
  }
  if (best > 0.0) return best;

  double mu = q[2] > 0.0 ? std::abs(q[1]) / (2.0 * q[2]) : 1.0;
  for (int i = 0; i < 60; ++i, mu *= 0.5)
    if (quartic(q, mu) < q[0]) return mu;
  return 0.0;
}

double wf_optimal_step(const LiftedProblem& prob, const CVec& psi, const CVec& g) {
  return optimal_step_from_polynomial(step_polynomial(prob, psi, g));
}

IterResult wf_solve(const LiftedProblem& prob, const CVec& init, const WfOptions& opts) {
  require(init.size() == prob.C.cols(), "wf_solve: initial point has the wrong dimension");
  const auto& kt = kernels::active();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t rows = urows(prob), cols = ucols(prob);

  CVec prev = init, cur = init, psi(init.size()), g(init.size());
  CVec u(prob.rows()), v(prob.rows()), w(prob.rows());
  IterResult out;

  for (int k = 1; k <= opts.max_iter; ++k) {
    const double beta = (k + 1.0) / (k + 3.0);
    psi = cur + beta * (cur - prev);
    kt.matvec(prob.C.data(), rows, cols, psi.data(), u.data());
    kt.intensity_residual(u.data(), prob.y.data(), rows, w.data());
    kt.matvec_adjoint(prob.C.data(), rows, cols, w.data(), g.data());

    double mu = 0.0, cost;
    if (g.squaredNorm() > 0.0) {
      kt.matvec(prob.C.data(), rows, cols, g.data(), v.data());
      std::array<double, 5> q{};
      kt.step_polynomial(u.data(), v.data(), prob.y.data(), rows, q.data());
      mu = optimal_step_from_polynomial(q);
      cost = quartic(q, mu);
    } else {
      cost = kt.intensity_residual(u.data(), prob.y.data(), rows, w.data());
    }

    prev = cur;
    cur = psi - mu * g;
    const double denom = prev.norm();
    const double residual = denom > 0.0 ? (cur - prev).norm() / denom : (cur - prev).norm();
    if (!std::isfinite(cost) || !cur.allFinite())
      fail(ErrorKind::Diverged, "diverged: Wirtinger flow produced non-finite iterates");

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.trace.push_back({k, cost, residual, secs});
    out.iterations = k;
    if (residual < opts.tol) {
      out.converged = true;
      break;
    }
  }
  out.signal = sigmodel::BivariateSignal::from_stacked(cur);
  return out;
}

}  // namespace ppr::itersolve
