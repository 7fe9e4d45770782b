#include <doctest.h>

#include <chrono>

#include <Eigen/Eigenvalues>

#include "ppr/itersolve.hpp"
#include "support.hpp"

using namespace ppr;
using namespace ppr::sigmodel;
using namespace ppr::itersolve;

namespace {

struct Instance {
  BivariateSignal x;
  MeasurementScheme scheme;
  LiftedProblem prob;
};

Instance noiseless(std::mt19937_64& rng, int N, int M = 0) {
  const BivariateSignal x = support::random_signal(rng, N);
  const MeasurementScheme scheme = simple_scheme(M > 0 ? M : 2 * N - 1);
  return {x, scheme, build_lifted(measure(x, scheme), scheme, N)};
}

CVec random_vec(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd;
  CVec v(n);
  for (auto& c : v) c = cd(nd(rng), nd(rng));
  return v;
}

double seconds_of(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("lifted rows") {
  std::mt19937_64 rng(1);
  const Instance in = noiseless(rng, 5, 11);
  CHECK(in.prob.rows() == 44);
  CHECK(in.prob.C.cols() == 10);
  for (int m : {0, 3, 10})
    for (int p = 0; p < 4; ++p)
      for (int i = 0; i < 2; ++i)
        for (int n = 0; n < 5; ++n) {
          const cd expect = in.scheme.projection(p)(i) * oracle::twiddle(m, n, 11);
          CHECK(std::abs(in.prob.C(m * 4 + p, i * 5 + n) - expect) < 1e-14);
        }
  const RVec u2 = itersolve::apply(in.prob, in.x.stacked()).cwiseAbs2();
  CHECK((u2 - in.prob.y).norm() < 1e-12 * in.prob.y.norm());

  const MeasurementScheme one(11, {Jones(1.0, 0.0)});
  const LiftedProblem lp = build_lifted(measure(in.x, one), one, 5);
  CHECK(lp.C.rightCols(5).norm() == 0.0);
  for (int m = 0; m < 11; ++m)
    for (int n = 0; n < 5; ++n) CHECK(std::abs(lp.C(m, n) - oracle::twiddle(m, n, 11)) < 1e-14);

  const CVec r = random_vec(rng, 44);
  const CVec xi = random_vec(rng, 10);
  CHECK(std::abs(r.dot(itersolve::apply(in.prob, xi)) - apply_adjoint(in.prob, r).dot(xi)) < 1e-11 * r.norm() * xi.norm() * 10);
}

TEST_CASE("objective and gradient basics") {
  std::mt19937_64 rng(2);
  const Instance in = noiseless(rng, 6);
  const CVec xi = in.x.stacked();
  CHECK(wf_objective(in.prob, xi) < 1e-26);
  CHECK(wf_gradient(in.prob, xi).norm() < 1e-12);
  const CVec z = random_vec(rng, 12);
  const double f = wf_objective(in.prob, z);
  CHECK(wf_objective(in.prob, z * std::polar(1.0, 0.9)) == doctest::Approx(f).epsilon(1e-13));
  // Stationarity along the phase orbit.
  const CVec g = wf_gradient(in.prob, z);
  CHECK(std::abs(g.dot(cd(0.0, 1.0) * z).real()) < 1e-10 * g.norm() * z.norm());
}

TEST_CASE("gradient matches finite differences") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const int N = 2 + t % 6;
    const Instance in = noiseless(rng, N);
    const CVec z = random_vec(rng, 2 * N) * 0.5;
    const CVec fd = oracle::fd_gradient([&](const CVec& v) { return wf_objective(in.prob, v); }, z, 1e-6);
    const CVec g = 2.0 * wf_gradient(in.prob, z);
    CHECK((fd - g).norm() < 1e-6 * g.norm());
  }
}

TEST_CASE("optimal step") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int N = 3 + t % 5;
    const Instance in = noiseless(rng, N);
    const CVec psi = random_vec(rng, 2 * N) * 0.3;
    const CVec g = wf_gradient(in.prob, psi);
    const double mu = wf_optimal_step(in.prob, psi, g);
    REQUIRE(mu > 0.0);
    const auto phi = [&](double m) { return wf_objective(in.prob, psi - m * g); };
    const double fstar = phi(mu);
    for (int k = 0; k < 100; ++k) CHECK(fstar <= phi(2.0 * mu * unif(rng)) * (1.0 + 1e-12));

    // The quartic reproduces the objective along the ray and is flat at mu.
    const auto q = step_polynomial(in.prob, psi, g);
    for (double m : {0.0, 0.5 * mu, mu, 3.0 * mu}) {
      const double quartic = (((q[4] * m + q[3]) * m + q[2]) * m + q[1]) * m + q[0];
      CHECK(quartic == doctest::Approx(phi(m)).epsilon(1e-10));
    }
    const double dq = ((4.0 * q[4] * mu + 3.0 * q[3]) * mu + 2.0 * q[2]) * mu + q[1];
    const double scale = std::abs(q[1]) + std::abs(q[2] * mu) + std::abs(q[3] * mu * mu) + std::abs(q[4] * mu * mu * mu);
    CHECK(std::abs(dq) < 1e-8 * scale);

    double hi = mu;
    while (phi(hi) <= phi(0.0)) hi *= 2.0;
    const double ref = oracle::golden_min(phi, 2.0 * hi);
    CHECK(std::abs(mu - ref) < 1e-6 * ref);
  }
}

TEST_CASE("optimal step beats a fixed Lipschitz step") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const Instance in = noiseless(rng, 6);
    const CVec psi = random_vec(rng, 12) * 0.3;
    const CVec g = wf_gradient(in.prob, psi);
    // Sampled curvature estimate of the gradient map.
    double L = 0.0;
    for (int s = 0; s < 20; ++s) {
      const CVec d = random_vec(rng, 12) * 1e-4;
      L = std::max(L, (wf_gradient(in.prob, psi + d) - g).norm() / d.norm());
    }
    const double f_opt = wf_objective(in.prob, psi - wf_optimal_step(in.prob, psi, g) * g);
    const double f_fix = wf_objective(in.prob, psi - g / L);
    CHECK(f_opt <= f_fix * (1.0 + 1e-12));
  }
}

TEST_CASE("step fallback when no stationary point is admissible") {
  // q'(mu) > 0 for all mu > 0: increasing quartic.
  CHECK(optimal_step_from_polynomial({1.0, 1.0, 1.0, 1.0, 1.0}) == 0.0);
  CHECK(optimal_step_from_polynomial({1.0, -1.0, 0.0, 0.0, 0.0}) == 0.0);
  const double mu = optimal_step_from_polynomial({1.0, -2.0, 1.0, 0.0, 0.25});
  CHECK(mu > 0.0);
}

TEST_CASE("wf_solve fixed point and noiseless recovery") {
  std::mt19937_64 rng(6);
  const Instance in = noiseless(rng, 8);
  const IterResult exact = wf_solve(in.prob, in.x.stacked());
  CHECK(exact.iterations <= 2);
  CHECK(exact.converged);
  CHECK(exact.trace.back().cost < 1e-26);

  const IterResult r = wf_solve(in.prob, init_sylvester(measure(in.x, in.scheme), in.scheme, 8, algsolve::Method::Right));
  CHECK(mse_realigned(r.signal, in.x) < 1e-20);
  for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].k == r.trace[k - 1].k + 1);

  CVec bad = in.x.stacked();
  bad(0) = cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_WITH_AS(wf_solve(in.prob, bad), doctest::Contains("diverged"), Error);
}

TEST_CASE("spectral initialisation") {
  std::mt19937_64 rng(7);
  const Instance in = noiseless(rng, 6);
  const double sum_y = in.prob.y.sum();
  const double lambda = std::sqrt(6.0 * sum_y / in.prob.C.squaredNorm());
  CHECK(init_spectral(in.prob).norm() == doctest::Approx(lambda).epsilon(1e-12));
  CHECK(init_spectral(in.prob, SpectralScaling::Divide).norm() == doctest::Approx(1.0 / lambda).epsilon(1e-12));

  // Y = (1/MP) sum y_r c_r c_r^H is Hermitian PSD for nonnegative y.
  CMat Y = in.prob.C.adjoint() * in.prob.y.asDiagonal() * in.prob.C;
  CHECK((Y - Y.adjoint()).norm() < 1e-12 * Y.norm());
  CHECK(Eigen::SelfAdjointEigenSolver<CMat>(Y).eigenvalues().minCoeff() > -1e-12 * Y.norm());

  // A single complex exponential: the initial point correlates with the truth.
  const int N = 16, M = 31;
  SignalMat s(N, 2);
  for (int n = 0; n < N; ++n) s.row(n) = oracle::twiddle(-5, n, M) * Eigen::RowVector2cd(cd(0.6, 0.2), cd(-0.3, 0.7));
  const BivariateSignal x(s);
  const LiftedProblem lp = build_lifted(measure(x, simple_scheme(M)), simple_scheme(M), N);
  const CVec v = init_spectral(lp);
  CHECK(std::abs(v.dot(x.stacked())) / (v.norm() * x.norm()) > 0.5);

  LiftedProblem zero = lp;
  zero.y.setZero();
  const CVec e = init_spectral(zero);
  CHECK(e.allFinite());
  CHECK(e == init_spectral(zero));
}

TEST_CASE("random-phase initialisation") {
  std::mt19937_64 rng(8);
  const Instance in = noiseless(rng, 5);
  CHECK(init_random_phase(in.prob, 3) == init_random_phase(in.prob, 3));
  CHECK(init_random_phase(in.prob, 3) != init_random_phase(in.prob, 4));
  CHECK(init_random_phase(in.prob, 3).allFinite());
  // Columns of the second component vanish: the pseudoinverse output has no
  // component there.
  const MeasurementScheme one(9, {Jones(1.0, 0.0)});
  const LiftedProblem lp = build_lifted(measure(in.x, one), one, 5);
  const CVec v = init_random_phase(lp, 1);
  CHECK(v.tail(5).norm() == doctest::Approx(0.0));
  CHECK(v.head(5).norm() > 0.0);
}

TEST_CASE("Sylvester initialisation") {
  std::mt19937_64 rng(9);
  const int N = 32;
  const BivariateSignal x = support::random_signal(rng, N).scaled(0.1);
  const MeasurementScheme scheme = simple_scheme(2 * N - 1);
  const MeasurementSet y = measure(x, scheme);
  const LiftedProblem lp = build_lifted(y, scheme, N);
  CHECK(wf_objective(lp, init_sylvester(y, scheme, N, algsolve::Method::Right)) < 1e-20);
  CHECK(wf_objective(lp, init_sylvester(y, scheme, N, algsolve::Method::Left)) < 1e-20);
}

TEST_CASE("Sylvester initialisation wins at 60 dB") {
  std::mt19937_64 rng(10);
  const int N = 32;
  const MeasurementScheme scheme = simple_scheme(2 * N - 1);
  int wins = 0;
  for (int t = 0; t < 20; ++t) {
    const BivariateSignal x = support::random_signal(rng, N);
    const MeasurementSet clean = measure(x, scheme);
    const MeasurementSet y = add_noise(clean, sigma2_for_snr(clean, 60.0), 500 + static_cast<std::uint64_t>(t));
    const LiftedProblem lp = build_lifted(y, scheme, N);
    const WfOptions opts{0.0, 2500};
    const double f_syl = wf_solve(lp, init_sylvester(y, scheme, N, algsolve::Method::Right), opts).trace.back().cost;
    const double f_spec = wf_solve(lp, init_spectral(lp), opts).trace.back().cost;
    wins += f_syl < f_spec;
  }
  CHECK(wins >= 16);
}

TEST_CASE("right kernel initialisation is cheaper than left") {
  std::mt19937_64 rng(11);
  const int N = 64;
  const BivariateSignal x = support::random_signal(rng, N);
  const MeasurementScheme scheme = simple_scheme(2 * N - 1);
  const MeasurementSet y = measure(x, scheme);
  const double tr = seconds_of([&] { init_sylvester(y, scheme, N, algsolve::Method::Right); });
  const double tl = seconds_of([&] { init_sylvester(y, scheme, N, algsolve::Method::Left); });
  MESSAGE("right " << tr << " s, left " << tl << " s");
  CHECK(tr < 2.0 * tl);
}

TEST_CASE("SDP invariants") {
  std::mt19937_64 rng(12);
  const Instance in = noiseless(rng, 3);

  SdpOptions opts;
  opts.max_iter = 300;
  double worst = 0.0;
  opts.on_iterate = [&](int, const CMat& xi) {
    const double lo = Eigen::SelfAdjointEigenSolver<CMat>(xi).eigenvalues().minCoeff();
    worst = std::min(worst, lo / std::max(xi.norm(), 1e-300));
  };
  const SdpResult r = sdp_solve(in.prob, opts);
  CHECK(worst >= -1e-12);
  CHECK(r.trace.back().cost <= sdp_objective(in.prob, CMat::Zero(6, 6), 0.0));
  CHECK((r.lifted - r.lifted.adjoint()).norm() < 1e-12 * r.lifted.norm());

  LiftedProblem zero = in.prob;
  zero.y.setZero();
  SdpOptions reg;
  reg.lambda = 0.1;
  reg.max_iter = 50;
  CHECK(sdp_solve(zero, reg).lifted.norm() == 0.0);
  CHECK_THROWS_AS(sdp_solve(in.prob, SdpOptions{-1.0}), Error);
}

TEST_CASE("SDP reaches the regularised optimum on a small problem") {
  std::mt19937_64 rng(13);
  const int N = 2;
  const BivariateSignal x = support::random_signal(rng, N);
  const MeasurementScheme scheme = simple_scheme(3);
  const MeasurementSet y = add_noise(measure(x, scheme), 1e-4, 2);
  const LiftedProblem lp = build_lifted(y, scheme, N);
  SdpOptions opts;
  opts.lambda = 1e-2;
  opts.max_iter = 3000;
  const SdpResult r = sdp_solve(lp, opts);
  const CVec xi = x.stacked();
  CHECK(r.trace.back().cost <= sdp_objective(lp, xi * xi.adjoint(), opts.lambda));
  CHECK(r.trace.back().cost == doctest::Approx(r.trace[999].cost).epsilon(1e-6));
  CHECK(r.trace.back().cost == doctest::Approx(sdp_objective(lp, r.lifted, opts.lambda)).epsilon(1e-12));
}

TEST_CASE("SDP noiseless recovery on a tiny signal") {
  std::mt19937_64 rng(14);
  const Instance in = noiseless(rng, 2);
  SdpOptions opts;
  opts.max_iter = 10000;
  const SdpResult r = sdp_solve(in.prob, opts);
  CHECK(mse_realigned(r.signal, in.x) < 1e-6 * in.x.samples().squaredNorm());
}

TEST_CASE("rank-one factor") {
  std::mt19937_64 rng(15);
  const CVec v = random_vec(rng, 6);
  const CVec f = rank1_factor(v * v.adjoint());
  CHECK(std::abs(std::abs(f.dot(v)) - v.squaredNorm()) < 1e-12 * v.squaredNorm());
  CHECK(rank1_factor(-CMat::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("lambda from SNR") { CHECK(sdp_lambda_for_snr(1e6) == doctest::Approx(1e-6)); }
