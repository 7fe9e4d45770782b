#include "ppr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "ppr/itersolve.hpp"
#include "ppr/linalg.hpp"

namespace ppr::diagnostics {

using extpoly::ExtendedPolynomial;
using extpoly::RootEntry;
using extpoly::RootMultiset;
using extpoly::RootValue;
using sigmodel::BivariateSignal;

namespace {

[[noreturn]] void bad_gcd(const std::string& why) {
  fail(ErrorKind::InconsistentPairing, "not a valid autocorrelation GCD: " + why);
}

bool is_inner(const RootValue& r) { return !r.infinite && std::abs(r.z) < 1.0; }

}  // namespace

PairedRoots pair_roots(const ExtendedPolynomial& H, const PairingOptions& opts) {
  const RootMultiset rs = extpoly::roots(H, opts.roots);
  PairedRoots out;
  std::vector<RootEntry> inner, outer;
  for (const auto& e : rs.entries) {
    if (!e.root.infinite && std::abs(std::abs(e.root.z) - 1.0) < opts.pair_tol) {
      if (e.multiplicity % 2 != 0) bad_gcd("unimodular root with odd multiplicity");
      out.unimodular.push_back(e);
    } else if (is_inner(e.root)) {
      inner.push_back(e);
    } else {
      outer.push_back(e);
    }
  }

  std::vector<bool> used(outer.size(), false);
  for (const auto& a : inner) {
    const bool at_zero = a.root.z == cd(0.0);
    const double tol = at_zero ? 0.0 : opts.pair_tol * std::max(1.0, 1.0 / std::abs(a.root.z));
    const cd target = at_zero ? cd(0.0) : 1.0 / std::conj(a.root.z);
    std::size_t best = outer.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < outer.size(); ++i) {
      if (used[i]) continue;
      const RootValue& b = outer[i].root;
      if (at_zero != b.infinite) continue;
      const double d = at_zero ? 0.0 : std::abs(b.z - target);
      if (d <= tol && d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best == outer.size()) bad_gcd("root without conjugate-inverse partner");
    if (outer[best].multiplicity != a.multiplicity) bad_gcd("partner multiplicities differ");
    used[best] = true;
    out.pairs.push_back({outer[best].root, a.root, a.multiplicity});
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) bad_gcd("root without conjugate-inverse partner");
  return out;
}

std::uint64_t count_from_pairs(const PairedRoots& pr) {
  std::uint64_t n = 1;
  for (const auto& p : pr.pairs) n *= static_cast<std::uint64_t>(p.multiplicity + 1);
  return n;
}

std::uint64_t count_solutions(const BivariateSignal& x, const PairingOptions& opts) {
  const ExtendedPolynomial q = extpoly::gcd(x.polynomial(0), x.polynomial(1), opts.rank_tol);
  if (q.degree() == 0) return 1;
  return count_from_pairs(pair_roots(extpoly::multiply(q, extpoly::conjugate_reflection(q)), opts));
}

bool uniqueness_check(const BivariateSignal& x, const PairingOptions& opts) {
  return count_solutions(x, opts) == 1;
}

BivariateSignal canonical_phase(const BivariateSignal& x) {
  const CVec xi = x.stacked();
  const double thr = 1e-9 * xi.norm();
  for (Eigen::Index i = 0; i < xi.size(); ++i)
    if (std::abs(xi(i)) > thr) return x.scaled(std::conj(xi(i)) / std::abs(xi(i)));
  return x;
}

namespace {

struct Factor {
  RootValue root;
  int multiplicity;
};

ExtendedPolynomial monic_from(const std::vector<Factor>& factors, int degree) {
  RootMultiset rs;
  rs.lead = 1.0;
  for (const auto& f : factors)
    if (f.multiplicity > 0) rs.entries.push_back({f.root, f.multiplicity});
  return extpoly::from_roots(rs, degree);
}

double sum_abs_log(const std::vector<Factor>& fs) {
  double s = 0.0;
  for (const auto& f : fs) s += f.multiplicity * std::log(std::abs(f.root.z));
  return s;
}

double sum_arg(const std::vector<Factor>& fs) {
  double s = 0.0;
  for (const auto& f : fs) s += f.multiplicity * std::arg(f.root.z);
  return s;
}

std::vector<Factor> factors_of(const RootMultiset& rs) {
  std::vector<Factor> out;
  for (const auto& e : rs.entries) out.push_back({e.root, e.multiplicity});
  return out;
}

bool has_boundary_root(const std::vector<Factor>& fs) {
  for (const auto& f : fs)
    if (f.root.infinite || f.root.z == cd(0.0)) return true;
  return false;
}

// <a, b> / ||a||^2 over coefficient vectors.
cd fit(const ExtendedPolynomial& model, const ExtendedPolynomial& target) {
  const CVec a = model.to_vector();
  return a.dot(target.to_vector()) / a.squaredNorm();
}

}  // namespace

std::vector<BivariateSignal> enumerate_solutions(const sigmodel::GammaPolynomial& g, const PairingOptions& opts) {
  const int N = g.N();
  for (int i = 0; i < 2; ++i)
    if (!(g.lag(i, i, 0).real() > 0.0))
      fail(ErrorKind::InvalidAutocorrelation, "invalid autocorrelation: zero-lag energy must be positive");

  const ExtendedPolynomial p1 = extpoly::gcd(g(0, 0), g(0, 1), opts.rank_tol);
  const ExtendedPolynomial p2 = extpoly::gcd(g(1, 0), g(1, 1), opts.rank_tol);
  const ExtendedPolynomial h = extpoly::gcd(p1, p2, opts.rank_tol);
  const int D2 = h.degree();
  if (D2 % 2 != 0) bad_gcd("odd degree");
  const int D = D2 / 2;
  if (p1.degree() != N - 1 + D || p2.degree() != N - 1 + D) bad_gcd("degree mismatch with Gamma");

  const ExtendedPolynomial r1 = extpoly::deconvolve(p1, h);
  const ExtendedPolynomial r2 = extpoly::deconvolve(p2, h);

  PairedRoots pr;
  if (D > 0) pr = pair_roots(h, opts);
  std::vector<Factor> fixed;
  for (const auto& u : pr.unimodular) fixed.push_back({u.root, u.multiplicity / 2});

  const double scale11 = g(0, 0).max_abs();
  const double scale22 = g(1, 1).max_abs();
  const cd lead11 = g.lag(0, 0, N - 1), lead22 = g.lag(1, 1, N - 1), lead12 = g.lag(0, 1, N - 1);
  const bool boundary = std::abs(lead11) <= 1e-10 * scale11 || std::abs(lead22) <= 1e-10 * scale22 ||
                        std::abs(lead12) <= 1e-10 * std::sqrt(scale11 * scale22);

  std::vector<Factor> alpha1, alpha2;
  if (!boundary) {
    alpha1 = factors_of(extpoly::roots(r1, opts.roots));
    alpha2 = factors_of(extpoly::roots(r2, opts.roots));
    if (has_boundary_root(alpha1) || has_boundary_root(alpha2)) bad_gcd("boundary roots with nonzero leading lag");
  }

  std::vector<BivariateSignal> out;
  std::vector<int> pick(pr.pairs.size(), 0);  // copies of the outer root
  while (true) {
    std::vector<Factor> beta = fixed;
    for (std::size_t i = 0; i < pr.pairs.size(); ++i) {
      beta.push_back({pr.pairs[i].outer, pick[i]});
      beta.push_back({pr.pairs[i].inner, pr.pairs[i].multiplicity - pick[i]});
    }

    BivariateSignal cand;
    if (!boundary) {
      std::vector<Factor> f1 = beta, f2 = beta;
      f1.insert(f1.end(), alpha1.begin(), alpha1.end());
      f2.insert(f2.end(), alpha2.begin(), alpha2.end());
      const ExtendedPolynomial m1 = monic_from(f1, N - 1);
      const ExtendedPolynomial m2 = monic_from(f2, N - 1);
      const double lb = sum_abs_log(beta);
      const double l1 = std::sqrt(std::abs(lead11) * std::exp(-lb - sum_abs_log(alpha1)));
      const double l2 = std::sqrt(std::abs(lead22) * std::exp(-lb - sum_abs_log(alpha2)));
      const double delta = std::numbers::pi * (N - 1) + std::arg(lead12) + sum_arg(beta) + sum_arg(alpha2);
      cand = BivariateSignal(m1.to_vector() * l1, m2.to_vector() * std::polar(l2, -delta));
    } else {
      const ExtendedPolynomial q = monic_from(beta, D);
      const ExtendedPolynomial m1 = extpoly::multiply(q, r1.scaled(1.0 / r1.norm()));
      const ExtendedPolynomial m2 = extpoly::multiply(q, r2.scaled(1.0 / r2.norm()));
      const double a11 = fit(extpoly::multiply(m1, extpoly::conjugate_reflection(m1)), g(0, 0)).real();
      const double a22 = fit(extpoly::multiply(m2, extpoly::conjugate_reflection(m2)), g(1, 1)).real();
      const cd k12 = fit(extpoly::multiply(m1, extpoly::conjugate_reflection(m2)), g(0, 1));
      if (!(a11 > 0.0) || !(a22 > 0.0)) bad_gcd("negative energy fit");
      const double l1 = std::sqrt(a11);
      // k12 = l1 conj(l2)
      const cd l2 = std::conj(k12) / l1;
      cand = BivariateSignal(m1.to_vector() * l1, m2.to_vector() * l2);
    }
    out.push_back(canonical_phase(cand));

    std::size_t i = 0;
    while (i < pick.size() && pick[i] == pr.pairs[i].multiplicity) pick[i++] = 0;
    if (i == pick.size()) break;
    ++pick[i];
  }
  return out;
}

int rank_deficiency(const BivariateSignal& x, double rank_tol) {
  const int N = x.length();
  if (N < 2) return 0;
  const CMat s = extpoly::sylvester(x.polynomial(0), x.polynomial(1), 1);
  return 2 * (N - 1) - linalg::numerical_rank(s, rank_tol);
}

double root_separation(const BivariateSignal& x, const extpoly::RootOptions& opts) {
  const RootMultiset r1 = extpoly::roots(x.polynomial(0), opts);
  const RootMultiset r2 = extpoly::roots(x.polynomial(1), opts);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : r1.entries)
    for (const auto& b : r2.entries) {
      if (a.root.infinite || b.root.infinite) {
        if (a.root.infinite && b.root.infinite) best = 0.0;
        continue;
      }
      best = std::min(best, std::abs(a.root.z - b.root.z));
    }
  return best;
}

namespace {

cd complex_normal(std::mt19937_64& rng, double variance) {
  std::normal_distribution<double> nd(0.0, std::sqrt(variance / 2.0));
  const double re = nd(rng);
  return {re, nd(rng)};
}

}  // namespace

BivariateSignal perturb_single(const BivariateSignal& x, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, x.length() - 1);
  sigmodel::SignalMat s = x.samples();
  const int n0 = pick(rng);
  s(n0, 0) += complex_normal(rng, sigma * sigma);
  s(n0, 1) += complex_normal(rng, sigma * sigma);
  return BivariateSignal(std::move(s));
}

BivariateSignal perturb_full(const BivariateSignal& x, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double var = sigma * sigma / x.length();
  sigmodel::SignalMat s = x.samples();
  for (int n = 0; n < x.length(); ++n)
    for (int i = 0; i < 2; ++i) s(n, i) += complex_normal(rng, var);
  return BivariateSignal(std::move(s));
}

double crlb_mse(const BivariateSignal& x, const sigmodel::MeasurementScheme& scheme, double sigma2) {
  require(sigma2 > 0.0, "crlb_mse: noise variance must be positive");
  sigmodel::MeasurementSet zero;
  zero.y = RMat::Zero(scheme.M(), scheme.P());
  const auto prob = itersolve::build_lifted(zero, scheme, x.length());
  const CVec u = itersolve::apply(prob, x.stacked());
  const RVec w = u.cwiseAbs2() / sigma2;
  const CVec s = u.cwiseProduct(u) / sigma2;

  const Eigen::Index n = prob.C.cols();
  const CMat I = prob.C.adjoint() * (w.asDiagonal() * prob.C);
  const CMat P = prob.C.adjoint() * (s.asDiagonal() * prob.C.conjugate());
  CMat J(2 * n, 2 * n);
  J << I, P, P.conjugate(), I.conjugate();

  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (J + J.adjoint()));
  const RVec& ev = es.eigenvalues();
  const double cut = 1e-10 * ev.cwiseAbs().maxCoeff();
  double bound = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (std::abs(ev(k)) > cut) bound += es.eigenvectors().col(k).head(n).squaredNorm() / ev(k);
  return bound;
}

}  // namespace ppr::diagnostics
