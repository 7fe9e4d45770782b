#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ppr/common.hpp"
#include "ppr/extpoly.hpp"

namespace ppr::sigmodel {

using Jones = Eigen::Vector2cd;
using Spectral = Eigen::Matrix2cd;
using SignalMat = Eigen::Matrix<cd, Eigen::Dynamic, 2>;

// N samples of a two-component complex signal. Column i holds x_{i+1}.
class BivariateSignal {
 public:
  BivariateSignal() = default;
  explicit BivariateSignal(SignalMat x);
  BivariateSignal(const CVec& x1, const CVec& x2);
  static BivariateSignal from_stacked(const CVec& xi);

  int length() const { return static_cast<int>(x_.rows()); }
  const SignalMat& samples() const { return x_; }
  CVec component(int i) const { return x_.col(i); }
  extpoly::ExtendedPolynomial polynomial(int i) const;
  // [x1; x2], the lifted unknown.
  CVec stacked() const;
  double norm() const { return x_.norm(); }
  BivariateSignal scaled(cd s) const { return BivariateSignal(SignalMat(x_ * s)); }

 private:
  SignalMat x_;
};

// Unit-norm projection vectors b_p and the number of frequency samples M.
class MeasurementScheme {
 public:
  MeasurementScheme(int M, std::vector<Jones> projections);
  int M() const { return m_; }
  int P() const { return static_cast<int>(b_.size()); }
  const std::vector<Jones>& projections() const { return b_; }
  const Jones& projection(int p) const { return b_[static_cast<std::size_t>(p)]; }
  MeasurementScheme with_M(int M) const { return MeasurementScheme(M, b_); }

 private:
  int m_;
  std::vector<Jones> b_;
};

struct MeasurementSet {
  RMat y;             // M x P, y(m, p)
  double sigma2 = 0;  // noise variance used to generate y (0 if noiseless)
  int M() const { return static_cast<int>(y.rows()); }
  int P() const { return static_cast<int>(y.cols()); }
};

using SpectralSequence = std::vector<Spectral>;

// The four cross-correlation polynomials Gamma_ij = X_i * conj-reflect(X_j),
// each of ambient degree 2N - 2. Index pairs are zero based.
class GammaPolynomial {
 public:
  GammaPolynomial() = default;
  explicit GammaPolynomial(std::array<extpoly::ExtendedPolynomial, 4> g);
  int N() const { return (entries_[0].degree() + 2) / 2; }
  const extpoly::ExtendedPolynomial& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(2 * i + j)];
  }
  // gamma_ij[lag], lag in [-(N-1), N-1].
  cd lag(int i, int j, int n) const { return (*this)(i, j)[n + N() - 1]; }
  const std::array<extpoly::ExtendedPolynomial, 4>& entries() const { return entries_; }

 private:
  std::array<extpoly::ExtendedPolynomial, 4> entries_;
};

struct StokesVector {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  Eigen::Vector4d vec() const { return {s0, s1, s2, s3}; }
  static StokesVector from(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }
};

// Fourier transform on M points: Xhat(m, i) = sum_n x_i[n] exp(-2 pi j m n / M).
SignalMat dft(const BivariateSignal& x, int M);
SpectralSequence spectral_matrices(const BivariateSignal& x, int M);

MeasurementSet measure(const BivariateSignal& x, const MeasurementScheme& scheme);
MeasurementSet add_noise(const MeasurementSet& y, double sigma2, std::uint64_t seed);
double snr_db(const MeasurementSet& clean, double sigma2);
double sigma2_for_snr(const MeasurementSet& clean, double snr_db);

StokesVector stokes_map(const Spectral& hermitian);
Spectral stokes_inverse(const StokesVector& s);

// P x 4 matrix D with y_m = D * stokes(F[m]). Row p is half the Stokes image of
// conj(b_p) b_p^T so that the trace identity holds exactly.
RMat polarimetric_matrix(const MeasurementScheme& scheme);
bool generating_family(const MeasurementScheme& scheme, double rank_tol = 1e-10);

GammaPolynomial gamma_from_signal(const BivariateSignal& x);
GammaPolynomial gamma_from_spectral(const SpectralSequence& F, int N);
SpectralSequence spectral_from_gamma(const GammaPolynomial& g, int M);

// x rotated by the global phase that best matches ref.
BivariateSignal align_phase(const BivariateSignal& x, const BivariateSignal& ref);
// Squared distance after the optimal global phase rotation.
double mse_realigned(const BivariateSignal& x, const BivariateSignal& ref);

MeasurementScheme simple_scheme(int M);
// Projection for a point s on the unit sphere.
Jones sphere_projection(const Eigen::Vector3d& s);
MeasurementScheme sphere_scheme(int M, const std::vector<Eigen::Vector3d>& points);
// Centres of the twelve base pixels of a HEALPix tessellation.
std::vector<Eigen::Vector3d> healpix_base_centers();

}  // namespace ppr::sigmodel
