#pragma once

#include <random>

#include "oracles.hpp"
#include "ppr/sigmodel.hpp"

namespace support {

using ppr::cd;
using ppr::sigmodel::BivariateSignal;

inline oracle::Signal to_oracle(const BivariateSignal& x) {
  oracle::Signal s(static_cast<std::size_t>(x.length()));
  for (int n = 0; n < x.length(); ++n) s[static_cast<std::size_t>(n)] = {x.samples()(n, 0), x.samples()(n, 1)};
  return s;
}

inline BivariateSignal from_oracle(const oracle::Signal& s) {
  ppr::sigmodel::SignalMat m(static_cast<Eigen::Index>(s.size()), 2);
  for (std::size_t n = 0; n < s.size(); ++n) m.row(static_cast<Eigen::Index>(n)) << s[n][0], s[n][1];
  return BivariateSignal(m);
}

inline std::vector<oracle::Jones> jones(const ppr::sigmodel::MeasurementScheme& scheme) {
  std::vector<oracle::Jones> b;
  for (const auto& p : scheme.projections()) b.push_back({p(0), p(1)});
  return b;
}

inline ppr::extpoly::ExtendedPolynomial poly(const oracle::Poly& p) { return ppr::extpoly::ExtendedPolynomial(p); }

inline BivariateSignal random_signal(std::mt19937_64& rng, int N) {
  std::normal_distribution<double> nd;
  ppr::sigmodel::SignalMat m(N, 2);
  for (int n = 0; n < N; ++n)
    for (int i = 0; i < 2; ++i) m(n, i) = cd(nd(rng), nd(rng));
  return BivariateSignal(m);
}

inline double max_coeff_diff(const ppr::extpoly::ExtendedPolynomial& a, const oracle::Poly& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) d = std::max(d, std::abs(a[static_cast<int>(k)] - b[k]));
  return d;
}

// A root with modulus in [0.4, 0.75] or [1.35, 2.5], away from the unit circle.
inline cd off_circle_root(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng) < 0.5 ? 0.4 + 0.35 * u(rng) : 1.35 + 1.15 * u(rng);
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

}  // namespace support
