#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ppr/itersolve.hpp"
#include "ppr/sigmodel.hpp"

namespace ppr::bench {

enum class Experiment { NoiselessPulse, InitCompare, SnrSweep, SchemeCompare, UniquenessStudy, CrlbTable };

Experiment parse_experiment(const std::string& name);
std::string experiment_name(Experiment e);

// A solver configuration: "right", "left", "sdp" or "wf-<init>" where init is
// one of spectral, random, right, left.
struct SolverSpec {
  std::string family;  // right | left | sdp | wf
  std::string init;    // "-" unless family == wf
  std::string label() const { return family == "wf" ? "wf-" + init : family; }
};
SolverSpec parse_solver(const std::string& name);

struct Config {
  Experiment experiment = Experiment::SnrSweep;
  // Zero means "use the experiment's default".
  int N = 0;
  int M = 0;  // 2N - 1
  int P = 0;  // 4 for simple, number of points for sphere
  std::vector<double> snr_db;
  int trials = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> solvers;
  std::string scheme = "simple";  // simple | sphere
  std::string sphere_points;      // optional CSV of x,y,z points
  std::string signal_file;        // optional ground truth
  std::string out_dir;
  bool svg = false;
  bool traces = false;
  bool save_estimates = false;
  int threads = 1;
  int wf_iters = 2500;
  double wf_tol = 1e-12;
  int sdp_iters = 10000;
  double sdp_tol = 1e-9;
  std::vector<double> sigmas;  // uniqueness study
};

// Fills experiment-specific defaults and checks invariants. Throws
// Error(InvalidArgument) on a bad configuration.
Config resolve(Config cfg);
std::string config_to_json(const Config& cfg);

struct ResultRow {
  std::string experiment, solver, init;
  double snr_db = 0.0;
  int trial = 0;
  double mse = 0.0;
  double aligned_error = 0.0;  // mse / ||X||_F^2
  int iterations = 0;
  double seconds = 0.0;
  bool converged = false;
  std::string scheme;  // scheme label, set by the scheme comparison
};
bool operator<(const ResultRow& a, const ResultRow& b);

struct SolveOutcome {
  sigmodel::BivariateSignal estimate;
  std::vector<TraceEntry> trace;
  int iterations = 0;
  double seconds = 0.0;
  bool converged = true;
};

// Runs one solver configuration on one measurement set.
SolveOutcome run_solver(const SolverSpec& spec, const sigmodel::MeasurementSet& y,
                        const sigmodel::MeasurementScheme& scheme, int N, double snr_db,
                        std::uint64_t seed, const Config& cfg);

// Smooth chirped pulse with Gaussian envelope and a polarization ellipse whose
// orientation turns by 0.8 pi across the support; unit Frobenius norm.
sigmodel::BivariateSignal make_pulse(int N);
// i.i.d. complex Gaussian samples scaled to unit Frobenius norm.
sigmodel::BivariateSignal random_signal(int N, std::uint64_t seed);
// x[n] = s[n] (a, b) with random s and a fixed random Jones vector.
sigmodel::BivariateSignal constant_polarization_signal(int N, std::uint64_t seed);

std::vector<Eigen::Vector3d> load_sphere_points(const std::string& path);
// "simple" keeps the first P of its four projections; "sphere" uses the
// configured point file or the twelve built-in centres. P = 0 keeps all.
sigmodel::MeasurementScheme make_scheme(const std::string& kind, int M, int P, const Config& cfg);

// Executes the experiment, writes outputs under cfg.out_dir and returns the
// per-trial rows (empty for the tabular experiments).
std::vector<ResultRow> run(const Config& cfg);

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);

// Runs fn(i) for i in [0, n) on a pool of `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

struct Series {
  std::string name;
  std::vector<double> x, y;
};
std::string svg_line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<Series>& series);

}  // namespace ppr::bench
