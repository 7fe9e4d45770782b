#include <doctest.h>

#include "ppr/algsolve.hpp"
#include "ppr/extpoly.hpp"
#include "ppr/linalg.hpp"
#include "support.hpp"

using namespace ppr;
using namespace ppr::sigmodel;
using algsolve::Method;

namespace {

BivariateSignal planted(std::mt19937_64& rng, const std::vector<cd>& common, int n_rest) {
  oracle::Planted p{common, oracle::random_poly(rng, n_rest), oracle::random_poly(rng, n_rest)};
  return support::from_oracle(p.build(0));
}

}  // namespace

TEST_CASE("spectral estimate from intensities") {
  std::mt19937_64 rng(1);
  const BivariateSignal x = support::random_signal(rng, 6);
  const MeasurementScheme scheme = simple_scheme(11);
  const SpectralSequence est = algsolve::estimate_spectral(measure(x, scheme), scheme);
  const SpectralSequence exact = spectral_matrices(x, 11);
  for (int m = 0; m < 11; ++m) CHECK((est[static_cast<std::size_t>(m)] - exact[static_cast<std::size_t>(m)]).norm() < 1e-10);

  MeasurementSet zeros;
  zeros.y = RMat::Zero(11, 4);
  for (const Spectral& f : algsolve::estimate_spectral(zeros, scheme)) CHECK(f.norm() == 0.0);

  // Noisy intensities still give rank-one PSD estimates.
  const MeasurementSet noisy = add_noise(measure(x, scheme), 1.0, 3);
  for (const Spectral& f : algsolve::estimate_spectral(noisy, scheme)) {
    CHECK((f - f.adjoint()).norm() < 1e-12 * (1.0 + f.norm()));
    Eigen::SelfAdjointEigenSolver<Spectral> es(f);
    CHECK(std::abs(es.eigenvalues()(0)) < 1e-12 * (1.0 + f.norm()));
    CHECK(es.eigenvalues()(1) >= 0.0);
  }
}

TEST_CASE("rank-one PSD projection") {
  const Spectral h{{2.0, cd(0.0, 1.0)}, {cd(0.0, -1.0), -3.0}};
  const Spectral r = algsolve::rank1_psd(h);
  Eigen::SelfAdjointEigenSolver<Spectral> es(h);
  const Eigen::Vector2cd u = es.eigenvectors().col(1);
  CHECK((r - es.eigenvalues()(1) * u * u.adjoint()).norm() < 1e-14);
  CHECK(algsolve::rank1_psd(-Spectral::Identity()).norm() == 0.0);
}

TEST_CASE("right kernel recovers random coprime signals") {
  std::mt19937_64 rng(2);
  for (int N : {1, 2, 3, 8, 16}) {
    const BivariateSignal x = support::random_signal(rng, N);
    const GammaPolynomial g = gamma_from_signal(x);
    const auto sol = algsolve::right_kernel_solve(g);
    CHECK(mse_realigned(sol.signal, x) < 1e-18 * x.samples().squaredNorm());
    CHECK(std::abs(sol.signal.samples().squaredNorm() - (g.lag(0, 0, 0) + g.lag(1, 1, 0)).real()) < 1e-12);
    if (N > 1) CHECK_FALSE(sol.degenerate);
  }
}

TEST_CASE("a silent second component is flagged") {
  // gcd(X1, 0) = X1, so the kernel is not one dimensional.
  std::mt19937_64 rng(3);
  SignalMat m = SignalMat::Zero(6, 2);
  m.col(0) = support::random_signal(rng, 6).component(0);
  const auto sol = algsolve::right_kernel_solve(gamma_from_signal(BivariateSignal(m)));
  CHECK(sol.degenerate);
}

TEST_CASE("right kernel spans the quotient pair") {
  std::mt19937_64 rng(4);
  {
    // Coprime: the kernel of Syl_{N-1}(Gamma11, Gamma21) is (X2, -X1).
    const BivariateSignal x = support::random_signal(rng, 6);
    const GammaPolynomial g = gamma_from_signal(x);
    const CMat syl = extpoly::sylvester(g(0, 0), g(1, 0), 5);
    CHECK(linalg::numerical_rank(syl, 1e-10) == syl.cols() - 1);
    const CVec v = linalg::smallest_right_singular(syl).v;
    const CVec u = v.head(6), w = v.tail(6);
    const cd s = x.component(1).dot(u) / x.component(1).squaredNorm();
    CHECK((u - s * x.component(1)).norm() < 1e-10);
    CHECK((w + s * x.component(0)).norm() < 1e-10);
  }
  {
    // Common factor Q of degree 2: kernel vectors are (R2 S, -R1 S).
    oracle::Planted p{{cd(2.0, 0.5), cd(-0.3, 0.6)}, oracle::random_poly(rng, 4), oracle::random_poly(rng, 4)};
    const BivariateSignal x = support::from_oracle(p.build(0));
    const int N = x.length();
    const GammaPolynomial g = gamma_from_signal(x);
    const CMat syl = extpoly::sylvester(g(0, 0), g(1, 0), N - 1);
    CHECK(linalg::numerical_rank(syl, 1e-10) == syl.cols() - 3);
    Eigen::JacobiSVD<CMat> svd(syl, Eigen::ComputeFullV);
    for (int k = 0; k < 3; ++k) {
      const CVec v = svd.matrixV().col(syl.cols() - 1 - k);
      const oracle::Poly u(v.data(), v.data() + N), w(v.data() + N, v.data() + 2 * N);
      const oracle::Poly lhs = oracle::convolve(u, p.r1), rhs = oracle::convolve(w, p.r2);
      double err = 0.0;
      for (std::size_t i = 0; i < lhs.size(); ++i) err = std::max(err, std::abs(lhs[i] + rhs[i]));
      CHECK(err < 1e-9);
    }
  }
}

TEST_CASE("left kernel recovers random coprime signals") {
  std::mt19937_64 rng(5);
  for (int N : {1, 2, 3, 8, 12}) {
    const BivariateSignal x = support::random_signal(rng, N);
    const GammaPolynomial g = gamma_from_signal(x);
    const auto sol = algsolve::left_kernel_solve(g);
    CHECK(mse_realigned(sol.signal, x) < 1e-16 * x.samples().squaredNorm());
    // Relative phase of the components matches the lag-zero cross term.
    const cd cross = sol.signal.component(1).dot(sol.signal.component(0));
    CHECK(std::abs(std::arg(cross * std::conj(g.lag(0, 1, 0)))) < 1e-8);
  }
}

TEST_CASE("left kernel rank law") {
  std::mt19937_64 rng(6);
  const int N = 7;
  const GammaPolynomial g = gamma_from_signal(support::random_signal(rng, N));
  for (int j = 0; j < 2; ++j) {
    const CMat s = extpoly::sylvester(g(j, 0), g(j, 1), 1);
    CHECK(s.cols() - linalg::numerical_rank(s, 1e-10) == N - 1);
  }
}

TEST_CASE("left kernel rejects orthogonal components") {
  SignalMat m = SignalMat::Zero(3, 2);
  m(0, 0) = 1.0;
  m(1, 0) = 1.0;
  m(0, 1) = 1.0;
  m(1, 1) = -1.0;
  m(2, 1) = 0.5;
  const GammaPolynomial g = gamma_from_signal(BivariateSignal(m));
  REQUIRE(std::abs(g.lag(0, 1, 0)) < 1e-15);
  CHECK_THROWS_WITH_AS(algsolve::left_kernel_solve(g), doctest::Contains("phase link"), Error);
}

TEST_CASE("degenerate kernels are flagged") {
  std::mt19937_64 rng(7);
  const BivariateSignal x = planted(rng, {cd(1.8, 0.3), cd(-0.5, 1.6)}, 4);
  const auto sol = algsolve::right_kernel_solve(gamma_from_signal(x));
  CHECK(sol.degenerate);
  CHECK(sol.gap_ratio < algsolve::kDegenerateGap);
}

TEST_CASE("invalid autocorrelations are rejected") {
  GammaPolynomial zero({extpoly::ExtendedPolynomial::zero(4), extpoly::ExtendedPolynomial::zero(4),
                        extpoly::ExtendedPolynomial::zero(4), extpoly::ExtendedPolynomial::zero(4)});
  CHECK_THROWS_AS(algsolve::right_kernel_solve(zero), Error);
  CHECK_THROWS_AS(algsolve::left_kernel_solve(zero), Error);
}

TEST_CASE("end-to-end algebraic pipeline") {
  std::mt19937_64 rng(8);
  const int N = 32;
  const BivariateSignal x = support::random_signal(rng, N);
  for (const auto& scheme : {simple_scheme(2 * N - 1), sphere_scheme(2 * N - 1, healpix_base_centers())}) {
    const MeasurementSet y = measure(x, scheme);
    for (Method method : {Method::Right, Method::Left}) {
      const auto res = algsolve::solve_algebraic(y, scheme, N, method);
      CHECK(mse_realigned(res.solution.signal, x) < 1e-16 * x.samples().squaredNorm());
    }
    // Scaling the intensities by c^2 scales the estimate by c.
    MeasurementSet y4 = y;
    y4.y *= 4.0;
    const auto a = algsolve::solve_algebraic(y, scheme, N, Method::Right).solution.signal;
    const auto b = algsolve::solve_algebraic(y4, scheme, N, Method::Right).solution.signal;
    CHECK(mse_realigned(b, a.scaled(2.0)) < 1e-20 * b.samples().squaredNorm() + 1e-24);
  }
  CHECK_THROWS_AS(algsolve::solve_algebraic(measure(x, simple_scheme(2 * N - 2)), simple_scheme(2 * N - 2), N, Method::Right),
                  Error);
}

TEST_CASE("algebraic pipeline at 60 dB") {
  std::mt19937_64 rng(9);
  const int N = 16;
  const MeasurementScheme scheme = simple_scheme(2 * N - 1);
  double rel = 0.0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const BivariateSignal x = support::random_signal(rng, N);
    const MeasurementSet clean = measure(x, scheme);
    const MeasurementSet y = add_noise(clean, sigma2_for_snr(clean, 60.0), 100 + static_cast<std::uint64_t>(t));
    const auto res = algsolve::solve_algebraic(y, scheme, N, Method::Right);
    rel += mse_realigned(res.solution.signal, x) / x.samples().squaredNorm() / trials;
  }
  CHECK(10.0 * std::log10(rel) < -20.0);
}
