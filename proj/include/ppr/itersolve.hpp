#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ppr/algsolve.hpp"
#include "ppr/sigmodel.hpp"

namespace ppr::itersolve {

// Intensities written as y_r = |c_r^H xi|^2 with xi = [x1; x2]. Row r = m P + p
// of C is c_{m,p}^H, whose entry i N + n is b_p[i] exp(-2 pi j m n / M).
struct LiftedProblem {
  CMatRow C;
  RVec y;
  int N = 0, M = 0, P = 0;
  Eigen::Index rows() const { return C.rows(); }
};

LiftedProblem build_lifted(const sigmodel::MeasurementSet& y, const sigmodel::MeasurementScheme& scheme, int N);

// C xi through the active kernel table.
CVec apply(const LiftedProblem& prob, const CVec& xi);
CVec apply_adjoint(const LiftedProblem& prob, const CVec& r);

// F(xi) = 0.5 || y - |C xi|^2 ||^2
double wf_objective(const LiftedProblem& prob, const CVec& xi);

// Wirtinger derivative dF/d conj(xi) = C^H ((|C xi|^2 - y) .* C xi). The real
// gradient with respect to (Re xi, Im xi) is twice its real and imaginary parts.
CVec wf_gradient(const LiftedProblem& prob, const CVec& xi);

// Coefficients q0..q4 of mu -> F(psi - mu g).
std::array<double, 5> step_polynomial(const LiftedProblem& prob, const CVec& psi, const CVec& g);

// Minimiser of F(psi - mu g) over mu > 0 from the real roots of the cubic
// derivative. Falls back to backtracking if no admissible root exists.
double wf_optimal_step(const LiftedProblem& prob, const CVec& psi, const CVec& g);
double optimal_step_from_polynomial(const std::array<double, 5>& q);

struct WfOptions {
  double tol = 1e-12;
  int max_iter = 2500;
};

struct IterResult {
  sigmodel::BivariateSignal signal;
  std::vector<TraceEntry> trace;
  int iterations = 0;
  bool converged = false;
};

IterResult wf_solve(const LiftedProblem& prob, const CVec& init, const WfOptions& opts = {});

enum class SpectralScaling { Multiply, Divide };

CVec init_spectral(const LiftedProblem& prob, SpectralScaling scaling = SpectralScaling::Multiply);
CVec init_random_phase(const LiftedProblem& prob, std::uint64_t seed);
CVec init_sylvester(const sigmodel::MeasurementSet& y, const sigmodel::MeasurementScheme& scheme, int N,
                    algsolve::Method which);

struct SdpOptions {
  double lambda = 0.0;
  double tol = 1e-9;
  int max_iter = 10000;
  // Called with every accepted iterate.
  std::function<void(int k, const CMat& xi_matrix)> on_iterate;
};

struct SdpResult : IterResult {
  CMat lifted;  // final Xi
};

// Trace-norm regularisation weight for a given linear SNR.
inline double sdp_lambda_for_snr(double snr_linear) { return 1.0 / snr_linear; }

// A(Xi)_r = c_r^H Xi c_r
RVec lifted_forward(const LiftedProblem& prob, const CMat& xi_matrix);
double sdp_objective(const LiftedProblem& prob, const CMat& xi_matrix, double lambda);
SdpResult sdp_solve(const LiftedProblem& prob, const SdpOptions& opts = {});

// sqrt(sigma0) u0 from the top eigenpair of a Hermitian PSD matrix.
CVec rank1_factor(const CMat& xi_matrix);

}  // namespace ppr::itersolve
