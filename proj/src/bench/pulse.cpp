#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "ppr/bench.hpp"

namespace ppr::bench {

using sigmodel::BivariateSignal;

BivariateSignal make_pulse(int N) {
  require(N >= 1, "make_pulse: N must be positive");
  const double pi = std::numbers::pi;
  sigmodel::SignalMat x(N, 2);
  for (int n = 0; n < N; ++n) {
    const double t = N > 1 ? static_cast<double>(n) / (N - 1) - 0.5 : 0.0;  // [-1/2, 1/2]
    const double env = std::exp(-t * t / (2.0 * 0.25 * 0.25));
    const cd carrier = std::polar(env, 2.0 * pi * (4.0 * t + 6.0 * t * t));
    const double theta = 0.8 * pi * (t + 0.5);      // ellipse orientation
    const double chi = (pi / 8.0) * std::cos(pi * t);  // ellipticity angle
    const cd j(0.0, 1.0);
    x(n, 0) = carrier * (std::cos(theta) * std::cos(chi) - j * std::sin(theta) * std::sin(chi));
    x(n, 1) = carrier * (std::sin(theta) * std::cos(chi) + j * std::cos(theta) * std::sin(chi));
  }
  x /= x.norm();
  return BivariateSignal(std::move(x));
}

namespace {

cd draw(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  return {re, nd(rng)};
}

}  // namespace

BivariateSignal random_signal(int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  sigmodel::SignalMat x(N, 2);
  for (int n = 0; n < N; ++n)
    for (int i = 0; i < 2; ++i) x(n, i) = draw(rng);
  x /= x.norm();
  return BivariateSignal(std::move(x));
}

BivariateSignal constant_polarization_signal(int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const cd a = draw(rng), b = draw(rng);
  sigmodel::SignalMat x(N, 2);
  for (int n = 0; n < N; ++n) {
    const cd s = draw(rng);
    x(n, 0) = s * a;
    x(n, 1) = s * b;
  }
  x /= x.norm();
  return BivariateSignal(std::move(x));
}

std::vector<Eigen::Vector3d> load_sphere_points(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open sphere point file " + path);
  std::vector<Eigen::Vector3d> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    Eigen::Vector3d p;
    require(static_cast<bool>(ss >> p(0) >> p(1) >> p(2)), "sphere point file: bad line '" + line + "'");
    require(std::abs(p.norm() - 1.0) < 1e-6, "sphere point file: point not on the unit sphere");
    pts.push_back(p.normalized());
  }
  require(!pts.empty(), "sphere point file: no points");
  return pts;
}

sigmodel::MeasurementScheme make_scheme(const std::string& kind, int M, int P, const Config& cfg) {
  std::vector<sigmodel::Jones> b;
  if (kind == "simple") {
    b = sigmodel::simple_scheme(M).projections();
  } else if (kind == "sphere") {
    const auto pts = cfg.sphere_points.empty() ? sigmodel::healpix_base_centers() : load_sphere_points(cfg.sphere_points);
    b = sigmodel::sphere_scheme(M, pts).projections();
  } else {
    fail(ErrorKind::InvalidArgument, "unknown scheme '" + kind + "' (expected simple or sphere)");
  }
  if (P > 0) {
    require(P <= static_cast<int>(b.size()), "scheme '" + kind + "' provides only " + std::to_string(b.size()) + " projections");
    b.resize(static_cast<std::size_t>(P));
  }
  return sigmodel::MeasurementScheme(M, std::move(b));
}

}  // namespace ppr::bench
