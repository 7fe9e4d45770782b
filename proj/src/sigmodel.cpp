#include "ppr/sigmodel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ppr/linalg.hpp"

namespace ppr::sigmodel {

using extpoly::ExtendedPolynomial;

BivariateSignal::BivariateSignal(SignalMat x) : x_(std::move(x)) {
  require(x_.rows() >= 1, "BivariateSignal: need at least one sample");
}

BivariateSignal::BivariateSignal(const CVec& x1, const CVec& x2) {
  require(x1.size() == x2.size() && x1.size() >= 1, "BivariateSignal: component lengths differ");
  x_.resize(x1.size(), 2);
  x_.col(0) = x1;
  x_.col(1) = x2;
}

BivariateSignal BivariateSignal::from_stacked(const CVec& xi) {
  require(xi.size() >= 2 && xi.size() % 2 == 0, "from_stacked: odd length");
  const Eigen::Index n = xi.size() / 2;
  return BivariateSignal(xi.head(n), xi.tail(n));
}

ExtendedPolynomial BivariateSignal::polynomial(int i) const {
  return ExtendedPolynomial::from_vector(x_.col(i));
}

CVec BivariateSignal::stacked() const {
  CVec xi(2 * x_.rows());
  xi << x_.col(0), x_.col(1);
  return xi;
}

MeasurementScheme::MeasurementScheme(int M, std::vector<Jones> projections)
    : m_(M), b_(std::move(projections)) {
  require(M >= 1, "MeasurementScheme: M must be positive");
  require(!b_.empty(), "MeasurementScheme: no projections");
  for (const auto& b : b_)
    require(std::abs(b.norm() - 1.0) < 1e-10, "MeasurementScheme: projections must have unit norm");
}

GammaPolynomial::GammaPolynomial(std::array<ExtendedPolynomial, 4> g) : entries_(std::move(g)) {
  const int d = entries_[0].degree();
  require(d % 2 == 0, "GammaPolynomial: ambient degree must be even");
  for (const auto& e : entries_) require(e.degree() == d, "GammaPolynomial: degrees differ");
}

namespace {

std::vector<cd> twiddles(int M, double sign) {
  std::vector<cd> w(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) {
    const double t = sign * 2.0 * std::numbers::pi * k / M;
    w[static_cast<std::size_t>(k)] = cd(std::cos(t), std::sin(t));
  }
  return w;
}

int mod(long long a, int M) {
  const long long r = a % M;
  return static_cast<int>(r < 0 ? r + M : r);
}

}  // namespace

SignalMat dft(const BivariateSignal& x, int M) {
  require(M >= 1, "dft: M must be positive");
  const auto w = twiddles(M, -1.0);
  const SignalMat& s = x.samples();
  SignalMat out = SignalMat::Zero(M, 2);
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < x.length(); ++n) {
      const cd t = w[static_cast<std::size_t>(mod(static_cast<long long>(m) * n, M))];
      out(m, 0) += s(n, 0) * t;
      out(m, 1) += s(n, 1) * t;
    }
  return out;
}

SpectralSequence spectral_matrices(const BivariateSignal& x, int M) {
  const SignalMat xh = dft(x, M);
  SpectralSequence F(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    const Jones v = xh.row(m).transpose();
    F[static_cast<std::size_t>(m)] = v * v.adjoint();
  }
  return F;
}

MeasurementSet measure(const BivariateSignal& x, const MeasurementScheme& scheme) {
  const SignalMat xh = dft(x, scheme.M());
  MeasurementSet out;
  out.y.resize(scheme.M(), scheme.P());
  for (int m = 0; m < scheme.M(); ++m)
    for (int p = 0; p < scheme.P(); ++p) {
      const Jones& b = scheme.projection(p);
      out.y(m, p) = std::norm(b(0) * xh(m, 0) + b(1) * xh(m, 1));
    }
  return out;
}

MeasurementSet add_noise(const MeasurementSet& y, double sigma2, std::uint64_t seed) {
  require(sigma2 >= 0.0, "add_noise: negative variance");
  MeasurementSet out = y;
  out.sigma2 = sigma2;
  if (sigma2 == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, std::sqrt(sigma2));
  for (Eigen::Index m = 0; m < out.y.rows(); ++m)
    for (Eigen::Index p = 0; p < out.y.cols(); ++p) out.y(m, p) += nd(rng);
  return out;
}

double snr_db(const MeasurementSet& clean, double sigma2) {
  require(sigma2 > 0.0, "snr_db: variance must be positive");
  const double power = clean.y.array().square().sum() / static_cast<double>(clean.y.size());
  return 10.0 * std::log10(power / sigma2);
}

double sigma2_for_snr(const MeasurementSet& clean, double snr) {
  const double power = clean.y.array().square().sum() / static_cast<double>(clean.y.size());
  return power / std::pow(10.0, snr / 10.0);
}

StokesVector stokes_map(const Spectral& h) {
  require((h - h.adjoint()).norm() <= 1e-9 * std::max(1.0, h.norm()),
          "stokes_map: matrix is not Hermitian");
  return {h(0, 0).real() + h(1, 1).real(), h(0, 0).real() - h(1, 1).real(), 2.0 * h(0, 1).real(),
          2.0 * h(0, 1).imag()};
}

Spectral stokes_inverse(const StokesVector& s) {
  Spectral h;
  h << cd(s.s0 + s.s1, 0.0), cd(s.s2, s.s3), cd(s.s2, -s.s3), cd(s.s0 - s.s1, 0.0);
  return 0.5 * h;
}

RMat polarimetric_matrix(const MeasurementScheme& scheme) {
  RMat d(scheme.P(), 4);
  for (int p = 0; p < scheme.P(); ++p) {
    const Jones& b = scheme.projection(p);
    const Spectral outer = b.conjugate() * b.transpose();
    d.row(p) = 0.5 * stokes_map(outer).vec().transpose();
  }
  return d;
}

bool generating_family(const MeasurementScheme& scheme, double rank_tol) {
  return linalg::numerical_rank(polarimetric_matrix(scheme).cast<cd>(), rank_tol) == 4;
}

GammaPolynomial gamma_from_signal(const BivariateSignal& x) {
  std::array<ExtendedPolynomial, 4> g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      g[static_cast<std::size_t>(2 * i + j)] =
          extpoly::multiply(x.polynomial(i), extpoly::conjugate_reflection(x.polynomial(j)));
  return GammaPolynomial(std::move(g));
}

GammaPolynomial gamma_from_spectral(const SpectralSequence& F, int N) {
  const int M = static_cast<int>(F.size());
  require(N >= 1, "gamma_from_spectral: N must be positive");
  if (M < 2 * N - 1)
    fail(ErrorKind::Underdetermined, "gamma_from_spectral: need M >= 2N - 1 frequency samples");
  const auto w = twiddles(M, 1.0);
  std::array<ExtendedPolynomial, 4> g;
  for (auto& e : g) e = ExtendedPolynomial::zero(2 * N - 2);
  for (int lag = -(N - 1); lag <= N - 1; ++lag) {
    Spectral acc = Spectral::Zero();
    for (int m = 0; m < M; ++m)
      acc += F[static_cast<std::size_t>(m)] * w[static_cast<std::size_t>(mod(static_cast<long long>(m) * lag, M))];
    acc /= static_cast<double>(M);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g[static_cast<std::size_t>(2 * i + j)][lag + N - 1] = acc(i, j);
  }
  return GammaPolynomial(std::move(g));
}

SpectralSequence spectral_from_gamma(const GammaPolynomial& g, int M) {
  const int N = g.N();
  const auto w = twiddles(M, -1.0);
  SpectralSequence F(static_cast<std::size_t>(M), Spectral::Zero());
  for (int m = 0; m < M; ++m)
    for (int lag = -(N - 1); lag <= N - 1; ++lag) {
      const cd t = w[static_cast<std::size_t>(mod(static_cast<long long>(m) * lag, M))];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) F[static_cast<std::size_t>(m)](i, j) += g.lag(i, j, lag) * t;
    }
  return F;
}

BivariateSignal align_phase(const BivariateSignal& x, const BivariateSignal& ref) {
  require(x.length() == ref.length(), "align_phase: lengths differ");
  const cd ip = (x.samples().conjugate().cwiseProduct(ref.samples())).sum();
  if (ip == cd(0.0)) return x;
  return x.scaled(ip / std::abs(ip));
}

double mse_realigned(const BivariateSignal& x, const BivariateSignal& ref) {
  return (align_phase(x, ref).samples() - ref.samples()).squaredNorm();
}

MeasurementScheme simple_scheme(int M) {
  const double r = 1.0 / std::sqrt(2.0);
  return MeasurementScheme(M, {Jones(1.0, 0.0), Jones(0.0, 1.0), Jones(r, r), Jones(r, cd(0.0, r))});
}

Jones sphere_projection(const Eigen::Vector3d& s) {
  require(std::abs(s.norm() - 1.0) < 1e-9, "sphere_projection: point not on the unit sphere");
  const double opz = 1.0 + s(2);
  if (opz < 1e-12) return Jones(cd(0.0, 1.0), 0.0);
  const double k = 1.0 / (std::sqrt(2.0) * std::sqrt(opz));
  return Jones(cd(0.0, k * s(0)), cd(k * s(1), k * opz));
}

MeasurementScheme sphere_scheme(int M, const std::vector<Eigen::Vector3d>& points) {
  std::vector<Jones> b;
  b.reserve(points.size());
  for (const auto& s : points) b.push_back(sphere_projection(s));
  return MeasurementScheme(M, std::move(b));
}

std::vector<Eigen::Vector3d> healpix_base_centers() {
  std::vector<Eigen::Vector3d> pts;
  const double pi = std::numbers::pi;
  const double zs[3] = {2.0 / 3.0, 0.0, -2.0 / 3.0};
  for (int ring = 0; ring < 3; ++ring) {
    const double z = zs[ring];
    const double r = std::sqrt(1.0 - z * z);
    for (int k = 0; k < 4; ++k) {
      const double phi = (ring == 1 ? 0.0 : pi / 4.0) + k * pi / 2.0;
      pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
  }
  return pts;
}

}  // namespace ppr::sigmodel
