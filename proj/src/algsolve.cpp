#include "ppr/algsolve.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "ppr/linalg.hpp"

namespace ppr::algsolve {

using sigmodel::BivariateSignal;
using sigmodel::GammaPolynomial;
using sigmodel::Spectral;

SpectralEstimator::SpectralEstimator(const sigmodel::MeasurementScheme& scheme) : M_(scheme.M()) {
  if (!sigmodel::generating_family(scheme))
    fail(ErrorKind::SchemeNotGenerating, "scheme not generating: projections do not span the Stokes space");
  dpinv_ = linalg::pinv(sigmodel::polarimetric_matrix(scheme));
}

sigmodel::SpectralSequence SpectralEstimator::estimate(const sigmodel::MeasurementSet& y) const {
  require(y.M() == M_ && y.P() == dpinv_.cols(), "estimate_spectral: measurement shape does not match scheme");
  sigmodel::SpectralSequence F(static_cast<std::size_t>(M_));
  for (int m = 0; m < M_; ++m) {
    const Eigen::Vector4d s = dpinv_ * y.y.row(m).transpose();
    F[static_cast<std::size_t>(m)] = rank1_psd(sigmodel::stokes_inverse(sigmodel::StokesVector::from(s)));
  }
  return F;
}

sigmodel::SpectralSequence estimate_spectral(const sigmodel::MeasurementSet& y,
                                             const sigmodel::MeasurementScheme& scheme) {
  return SpectralEstimator(scheme).estimate(y);
}

Spectral rank1_psd(const Spectral& h) {
  Eigen::SelfAdjointEigenSolver<Spectral> es(h);
  const double top = std::max(es.eigenvalues()(1), 0.0);
  const Eigen::Vector2cd u = es.eigenvectors().col(1);
  return top * u * u.adjoint();
}

namespace {

double gap(double small, double next) {
  if (small <= 0.0) return next > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return next / small;
}

double energy(const GammaPolynomial& g, int i) {
  const cd e = g.lag(i, i, 0);
  if (!(e.real() > 0.0) || !std::isfinite(e.real()))
    fail(ErrorKind::InvalidAutocorrelation, "invalid autocorrelation: zero-lag energy must be positive");
  return e.real();
}

}  // namespace

KernelSolution right_kernel_solve(const GammaPolynomial& g) {
  const int N = g.N();
  const double e = energy(g, 0) + g.lag(1, 1, 0).real();
  if (!(e > 0.0)) fail(ErrorKind::InvalidAutocorrelation, "invalid autocorrelation: total energy must be positive");

  // Kernel of Syl_{N-1}(G11, G21) is c (-x2, x1).
  const auto nv = linalg::smallest_right_singular(extpoly::sylvester(g(0, 0), g(1, 0), N - 1));
  const CVec v1 = nv.v.tail(N);
  const CVec v2 = -nv.v.head(N);
  const double c = std::sqrt((v1.squaredNorm() + v2.squaredNorm()) / e);

  KernelSolution out;
  out.signal = BivariateSignal(v1 / c, v2 / c);
  out.gap_ratio = gap(nv.sigma_min, nv.sigma_next);
  out.degenerate = out.gap_ratio < kDegenerateGap;
  return out;
}

KernelSolution left_kernel_solve(const GammaPolynomial& g) {
  const int N = g.N();
  if (N < 2) return right_kernel_solve(g);
  const double e1 = energy(g, 0), e2 = energy(g, 1);

  const int K = N - 1;          // dimension of the left kernel
  const int len = 4 * N - 4;    // Syl_1 is len x len
  const int hcols = 3 * N - 3;  // columns of each Hankel block
  double worst_gap = std::numeric_limits<double>::infinity();
  CVec w[2];

  for (int j = 0; j < 2; ++j) {
    const CMat S = extpoly::sylvester(g(j, 0), g(j, 1), 1);
    // u^T S = 0 <=> S^T u = 0: right kernel of the transpose.
    Eigen::BDCSVD<CMat> svd(S.transpose(), Eigen::ComputeFullV);
    const RVec& s = svd.singularValues();
    worst_gap = std::min(worst_gap, gap(s(len - K), s(len - K - 1)));
    const CMat U = svd.matrixV().rightCols(K);

    CMat H(N, static_cast<Eigen::Index>(K) * hcols);
    for (int b = 0; b < K; ++b)
      for (int i = 0; i < N; ++i)
        for (int k = 0; k < hcols; ++k) H(i, b * hcols + k) = U(i + k, b);

    // h^T H = 0 <=> H^T h = 0.
    const auto nv = linalg::smallest_right_singular(H.transpose());
    worst_gap = std::min(worst_gap, gap(nv.sigma_min, nv.sigma_next));
    w[j] = nv.v;
  }

  const cd link = w[1].dot(w[0]);  // w2^H w1
  const cd g12 = g.lag(0, 1, 0);
  if (std::abs(link) <= 1e-14 * w[0].norm() * w[1].norm() || std::abs(g12) <= 1e-14 * std::sqrt(e1 * e2))
    fail(ErrorKind::PhaseLinkUndefined, "phase link undefined: components are orthogonal");

  const double c1 = w[0].norm() / std::sqrt(e1);
  const cd c2 = w[1].norm() / std::sqrt(e2) * std::polar(1.0, std::arg(g12) - std::arg(link));

  KernelSolution out;
  out.signal = BivariateSignal(w[0] / c1, w[1] / c2);
  out.gap_ratio = worst_gap;
  out.degenerate = worst_gap < kDegenerateGap;
  return out;
}

AlgebraicResult solve_algebraic(const sigmodel::MeasurementSet& y, const sigmodel::MeasurementScheme& scheme,
                                int N, Method method) {
  require(y.M() == scheme.M() && y.P() == scheme.P(), "solve_algebraic: measurement shape does not match scheme");
  AlgebraicResult out;
  out.gamma = sigmodel::gamma_from_spectral(estimate_spectral(y, scheme), N);
  out.solution = method == Method::Right ? right_kernel_solve(out.gamma) : left_kernel_solve(out.gamma);
  return out;
}

}  // namespace ppr::algsolve
