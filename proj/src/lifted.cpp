#include <cmath>
#include <numbers>
#include <random>

#include "ppr/itersolve.hpp"
#include "ppr/kernels.hpp"
#include "ppr/linalg.hpp"

namespace ppr::itersolve {

LiftedProblem build_lifted(const sigmodel::MeasurementSet& y, const sigmodel::MeasurementScheme& scheme, int N) {
  require(N >= 1, "build_lifted: N must be positive");
  require(y.M() == scheme.M() && y.P() == scheme.P(), "build_lifted: measurement shape does not match scheme");
  LiftedProblem prob;
  prob.N = N;
  prob.M = scheme.M();
  prob.P = scheme.P();
  const int M = prob.M, P = prob.P;

  std::vector<cd> w(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) {
    const double t = -2.0 * std::numbers::pi * k / M;
    w[static_cast<std::size_t>(k)] = cd(std::cos(t), std::sin(t));
  }

  prob.C.resize(static_cast<Eigen::Index>(M) * P, 2 * N);
  prob.y.resize(static_cast<Eigen::Index>(M) * P);
  for (int m = 0; m < M; ++m)
    for (int p = 0; p < P; ++p) {
      const Eigen::Index r = static_cast<Eigen::Index>(m) * P + p;
      const auto& b = scheme.projection(p);
      for (int n = 0; n < N; ++n) {
        const cd t = w[static_cast<std::size_t>((static_cast<long long>(m) * n) % M)];
        prob.C(r, n) = b(0) * t;
        prob.C(r, N + n) = b(1) * t;
      }
      prob.y(r) = y.y(m, p);
    }
  return prob;
}

CVec apply(const LiftedProblem& prob, const CVec& xi) {
  require(xi.size() == prob.C.cols(), "apply: dimension mismatch");
  CVec out(prob.C.rows());
  kernels::active().matvec(prob.C.data(), static_cast<std::size_t>(prob.C.rows()),
                           static_cast<std::size_t>(prob.C.cols()), xi.data(), out.data());
  return out;
}

CVec apply_adjoint(const LiftedProblem& prob, const CVec& r) {
  require(r.size() == prob.C.rows(), "apply_adjoint: dimension mismatch");
  CVec out(prob.C.cols());
  kernels::active().matvec_adjoint(prob.C.data(), static_cast<std::size_t>(prob.C.rows()),
                                   static_cast<std::size_t>(prob.C.cols()), r.data(), out.data());
  return out;
}

CVec init_spectral(const LiftedProblem& prob, SpectralScaling scaling) {
  const double mp = static_cast<double>(prob.rows());
  const CMat Y = prob.C.adjoint() * (prob.y.asDiagonal() * prob.C) / mp;
  CVec e0 = CVec::Zero(prob.C.cols());
  e0(0) = 1.0;
  if (Y.norm() == 0.0) return e0;

  const auto top = linalg::top_eigenpair(Y);
  const double lambda2 = prob.N * prob.y.sum() / prob.C.squaredNorm();
  if (!(lambda2 > 0.0)) return e0;
  const double lambda = std::sqrt(lambda2);
  return scaling == SpectralScaling::Multiply ? CVec(top.vector * lambda) : CVec(top.vector / lambda);
}

CVec init_random_phase(const LiftedProblem& prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  CVec z(prob.rows());
  for (Eigen::Index r = 0; r < z.size(); ++r) z(r) = prob.y(r) * std::polar(1.0, phase(rng));
  const CMat c = prob.C;
  return c.completeOrthogonalDecomposition().solve(z);
}

CVec init_sylvester(const sigmodel::MeasurementSet& y, const sigmodel::MeasurementScheme& scheme, int N,
                    algsolve::Method which) {
  return algsolve::solve_algebraic(y, scheme, N, which).solution.signal.stacked();
}

}  // namespace ppr::itersolve
