#pragma once

#include "ppr/sigmodel.hpp"

namespace ppr::algsolve {

// Recovers the spectral matrices from projected intensities. The pseudoinverse
// of the polarimetric matrix is computed once per scheme.
class SpectralEstimator {
 public:
  explicit SpectralEstimator(const sigmodel::MeasurementScheme& scheme);
  sigmodel::SpectralSequence estimate(const sigmodel::MeasurementSet& y) const;
  const RMat& pseudoinverse() const { return dpinv_; }

 private:
  int M_;
  RMat dpinv_;
};

sigmodel::SpectralSequence estimate_spectral(const sigmodel::MeasurementSet& y,
                                             const sigmodel::MeasurementScheme& scheme);

// Closest positive semidefinite matrix of rank at most one.
sigmodel::Spectral rank1_psd(const sigmodel::Spectral& h);

struct KernelSolution {
  sigmodel::BivariateSignal signal;
  // Ratio between the two smallest relevant singular values. Below the
  // threshold the kernel is not reliably one dimensional.
  double gap_ratio = 0.0;
  bool degenerate = false;
};

inline constexpr double kDegenerateGap = 10.0;

KernelSolution right_kernel_solve(const sigmodel::GammaPolynomial& g);
KernelSolution left_kernel_solve(const sigmodel::GammaPolynomial& g);

enum class Method { Right, Left };

struct AlgebraicResult {
  KernelSolution solution;
  sigmodel::GammaPolynomial gamma;
};

// Full pipeline: intensities -> spectral matrices -> Gamma -> kernel solve.
AlgebraicResult solve_algebraic(const sigmodel::MeasurementSet& y,
                                const sigmodel::MeasurementScheme& scheme, int N, Method method);

}  // namespace ppr::algsolve
