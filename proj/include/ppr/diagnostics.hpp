#pragma once

#include <cstdint>
#include <vector>

#include "ppr/extpoly.hpp"
#include "ppr/sigmodel.hpp"

namespace ppr::diagnostics {

struct PairingOptions {
  double pair_tol = 1e-6;
  double rank_tol = 1e-10;
  extpoly::RootOptions roots{};
};

// A root delta outside the unit disc (or at infinity) with its partner
// 1 / conj(delta) inside (or at zero). Multiplicity counts delta in H.
struct RootPair {
  extpoly::RootValue outer;
  extpoly::RootValue inner;
  int multiplicity = 1;
};

struct PairedRoots {
  std::vector<RootPair> pairs;
  std::vector<extpoly::RootEntry> unimodular;  // multiplicities as roots of H
};

// Splits the roots of H = c Q conj-reflect(Q) into conjugate-inverse pairs.
PairedRoots pair_roots(const extpoly::ExtendedPolynomial& H, const PairingOptions& opts = {});

std::uint64_t count_from_pairs(const PairedRoots& pr);
std::uint64_t count_solutions(const sigmodel::BivariateSignal& x, const PairingOptions& opts = {});
bool uniqueness_check(const sigmodel::BivariateSignal& x, const PairingOptions& opts = {});

// Every signal sharing the given Gamma polynomials, each in canonical phase.
std::vector<sigmodel::BivariateSignal> enumerate_solutions(const sigmodel::GammaPolynomial& g,
                                                           const PairingOptions& opts = {});

// First sample (in stacked order) above 1e-9 ||x|| made real and positive.
sigmodel::BivariateSignal canonical_phase(const sigmodel::BivariateSignal& x);

// 2(N - 1) - rank Syl_1(X1, X2)
int rank_deficiency(const sigmodel::BivariateSignal& x, double rank_tol = 1e-10);
double root_separation(const sigmodel::BivariateSignal& x, const extpoly::RootOptions& opts = {});

sigmodel::BivariateSignal perturb_single(const sigmodel::BivariateSignal& x, double sigma, std::uint64_t seed);
sigmodel::BivariateSignal perturb_full(const sigmodel::BivariateSignal& x, double sigma, std::uint64_t seed);

// Lower bound on E||xi_hat - xi||^2 for unbiased estimators under additive
// real Gaussian noise of variance sigma2 on every intensity.
double crlb_mse(const sigmodel::BivariateSignal& x, const sigmodel::MeasurementScheme& scheme, double sigma2);

}  // namespace ppr::diagnostics
