#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "ppr/algsolve.hpp"
#include "ppr/bench.hpp"
#include "ppr/diagnostics.hpp"
#include "ppr/io.hpp"

namespace ppr::bench {

namespace fs = std::filesystem;
using sigmodel::BivariateSignal;
using sigmodel::MeasurementScheme;
using sigmodel::MeasurementSet;

namespace {

const std::pair<const char*, Experiment> kExperiments[] = {
    {"noiseless-pulse", Experiment::NoiselessPulse}, {"init-compare", Experiment::InitCompare},
    {"snr-sweep", Experiment::SnrSweep},             {"scheme-compare", Experiment::SchemeCompare},
    {"uniqueness-study", Experiment::UniquenessStudy}, {"crlb-table", Experiment::CrlbTable},
};

constexpr double kInf = std::numeric_limits<double>::infinity();

SolveOutcome run_solver_unchecked(const SolverSpec& spec, const MeasurementSet& y, const MeasurementScheme& scheme,
                                  int N, double snr_db, std::uint64_t seed, const Config& cfg);

// Noise and init seeds for one (trial, snr) cell, derived from seed + trial.
std::uint64_t cell_seed(std::uint64_t trial_seed, std::size_t snr_index, std::uint64_t salt = 0) {
  std::uint64_t z = trial_seed * 0x9E3779B97F4A7C15ULL + snr_index * 0xBF58476D1CE4E5B9ULL + salt;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string snr_tag(double snr) {
  if (std::isinf(snr)) return "inf";
  std::ostringstream ss;
  ss << snr;
  return ss.str();
}

double rel_db(double mse, double norm2) { return 10.0 * std::log10(mse / norm2); }

bool needs_algebraic(const std::vector<std::string>& solvers) {
  for (const auto& s : solvers) {
    const SolverSpec spec = parse_solver(s);
    if (spec.family == "right" || spec.family == "left" || spec.init == "right" || spec.init == "left") return true;
  }
  return false;
}

MeasurementSet noisy(const MeasurementSet& clean, double snr, std::uint64_t seed) {
  if (std::isinf(snr)) return clean;
  return sigmodel::add_noise(clean, sigmodel::sigma2_for_snr(clean, snr), seed);
}

void write_estimate(const Config& cfg, const std::string& name, const BivariateSignal& x) {
  if (!cfg.save_estimates) return;
  fs::create_directories(fs::path(cfg.out_dir) / "estimates");
  io::write_signal((fs::path(cfg.out_dir) / "estimates" / (name + ".json")).string(), x);
}

void write_trace(const Config& cfg, const std::string& sub, const std::string& name, const std::vector<TraceEntry>& t) {
  if (!cfg.traces || t.empty()) return;
  fs::path dir = fs::path(cfg.out_dir) / "traces";
  if (!sub.empty()) dir /= sub;
  fs::create_directories(dir);
  io::write_trace_csv((dir / (name + ".csv")).string(), t);
}

BivariateSignal ground_truth(const Config& cfg, std::uint64_t seed) {
  if (!cfg.signal_file.empty()) {
    BivariateSignal x = io::read_signal(cfg.signal_file);
    require(x.length() == cfg.N, "signal file length does not match --n");
    return x;
  }
  return random_signal(cfg.N, seed);
}

// Runs every (snr, solver) pair for each trial on a fixed scheme.
std::vector<ResultRow> sweep(const Config& cfg, const MeasurementScheme& scheme, const std::string& scheme_label,
                             bool fixed_truth, bool sub_by_snr) {
  const auto specs = [&] {
    std::vector<SolverSpec> v;
    for (const auto& s : cfg.solvers) v.push_back(parse_solver(s));
    return v;
  }();
  const std::size_t per_trial = cfg.snr_db.size() * specs.size();
  std::vector<ResultRow> rows(static_cast<std::size_t>(cfg.trials) * per_trial);
  const BivariateSignal fixed = fixed_truth ? ground_truth(cfg, cfg.seed) : BivariateSignal();

  parallel_for(cfg.trials, cfg.threads, [&](int trial) {
    const std::uint64_t tseed = cfg.seed + static_cast<std::uint64_t>(trial);
    const BivariateSignal x = fixed_truth ? fixed : ground_truth(cfg, tseed);
    const MeasurementSet clean = sigmodel::measure(x, scheme);
    const double norm2 = x.norm() * x.norm();
    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
      const double snr = cfg.snr_db[si];
      const MeasurementSet y = noisy(clean, snr, cell_seed(tseed, si));
      for (std::size_t k = 0; k < specs.size(); ++k) {
        const SolveOutcome o = run_solver(specs[k], y, scheme, cfg.N, snr, cell_seed(tseed, si, 1), cfg);
        ResultRow r;
        r.experiment = experiment_name(cfg.experiment);
        r.solver = specs[k].family;
        r.init = specs[k].init;
        r.snr_db = snr;
        r.trial = trial;
        r.mse = sigmodel::mse_realigned(o.estimate, x);
        r.aligned_error = r.mse / norm2;
        r.iterations = o.iterations;
        r.seconds = o.seconds;
        r.converged = o.converged;
        r.scheme = scheme_label;
        rows[static_cast<std::size_t>(trial) * per_trial + si * specs.size() + k] = r;
        const std::string name = (scheme_label.empty() ? "" : scheme_label + "_") + specs[k].label() + "_" +
                                 std::to_string(trial);
        const std::string sub = sub_by_snr ? "snr" + snr_tag(snr) : "";
        write_trace(cfg, sub, name, o.trace);
        write_estimate(cfg, name + "_snr" + snr_tag(snr), o.estimate);
      }
    }
  });
  return rows;
}

struct Summary {
  double mean_mse = 0.0;
  int count = 0;
};

// mean MSE keyed by (scheme, solver label, snr)
std::map<std::tuple<std::string, std::string, double>, Summary> summarize(const std::vector<ResultRow>& rows) {
  std::map<std::tuple<std::string, std::string, double>, Summary> m;
  for (const auto& r : rows) {
    auto& s = m[{r.scheme, r.solver == "wf" ? "wf-" + r.init : r.solver, r.snr_db}];
    s.mean_mse += r.mse;
    ++s.count;
  }
  for (auto& [k, s] : m) s.mean_mse /= s.count;
  return m;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

void finish_rows(const Config& cfg, std::vector<ResultRow>& rows) {
  std::sort(rows.begin(), rows.end());
  write_results_csv((fs::path(cfg.out_dir) / "results.csv").string(), rows);
}

struct SchemeCase {
  std::string label;
  MeasurementScheme scheme;
};

void write_sweep_summary(const Config& cfg, const std::vector<ResultRow>& rows, const std::vector<SchemeCase>& cases,
                         const BivariateSignal& truth) {
  const double norm2 = truth.norm() * truth.norm();
  const auto sum = summarize(rows);
  std::ofstream out(fs::path(cfg.out_dir) / "summary.csv");
  out << "scheme,solver,snr_db,mean_mse,mean_mse_db,crlb,crlb_db\n";
  std::map<std::string, Series> series;
  for (const auto& c : cases) {
    const MeasurementSet clean = sigmodel::measure(truth, c.scheme);
    std::map<double, double> crlb;
    for (double snr : cfg.snr_db)
      crlb[snr] = std::isinf(snr) ? 0.0 : diagnostics::crlb_mse(truth, c.scheme, sigmodel::sigma2_for_snr(clean, snr));
    for (const auto& [key, s] : sum) {
      const auto& [scheme, solver, snr] = key;
      if (scheme != c.label) continue;
      const double cr = crlb[snr];
      out << scheme << ',' << solver << ',' << fmt(snr) << ',' << fmt(s.mean_mse) << ',' << fmt(rel_db(s.mean_mse, norm2))
          << ',' << fmt(cr) << ',' << fmt(rel_db(cr, norm2)) << '\n';
      auto& ser = series[(c.label.empty() ? "" : c.label + " ") + solver];
      ser.name = (c.label.empty() ? "" : c.label + " ") + solver;
      ser.x.push_back(snr);
      ser.y.push_back(rel_db(s.mean_mse, norm2));
    }
    Series cs{(c.label.empty() ? "" : c.label + " ") + "CRLB", {}, {}};
    for (double snr : cfg.snr_db) {
      cs.x.push_back(snr);
      cs.y.push_back(rel_db(crlb[snr], norm2));
    }
    series[cs.name] = cs;
  }
  if (cfg.svg) {
    std::vector<Series> v;
    for (auto& [k, s] : series) v.push_back(s);
    io::write_text((fs::path(cfg.out_dir) / "mse_vs_snr.svg").string(),
                   svg_line_chart(experiment_name(cfg.experiment), "SNR (dB)", "relative MSE (dB)", v));
  }
}

std::vector<ResultRow> run_noiseless_pulse(const Config& cfg) {
  const BivariateSignal x = cfg.signal_file.empty() ? make_pulse(cfg.N) : io::read_signal(cfg.signal_file);
  require(x.length() == cfg.N, "signal file length does not match --n");
  const MeasurementScheme scheme = make_scheme(cfg.scheme, cfg.M, cfg.P, cfg);
  io::write_signal((fs::path(cfg.out_dir) / "signal.json").string(), x);

  Config c = cfg;
  c.signal_file.clear();
  std::vector<ResultRow> rows;
  // The pulse is deterministic; trials only repeat the timing.
  const MeasurementSet y = sigmodel::measure(x, scheme);
  std::vector<SolverSpec> specs;
  for (const auto& s : cfg.solvers) specs.push_back(parse_solver(s));
  std::vector<BivariateSignal> estimates(specs.size() * static_cast<std::size_t>(cfg.trials));
  rows.resize(estimates.size());
  parallel_for(static_cast<int>(estimates.size()), cfg.threads, [&](int idx) {
    const std::size_t k = static_cast<std::size_t>(idx) % specs.size();
    const int trial = idx / static_cast<int>(specs.size());
    const SolveOutcome o = run_solver(specs[k], y, scheme, cfg.N, kInf, cell_seed(cfg.seed + trial, 0, 1), cfg);
    estimates[static_cast<std::size_t>(idx)] = sigmodel::align_phase(o.estimate, x);
    ResultRow r;
    r.experiment = experiment_name(cfg.experiment);
    r.solver = specs[k].family;
    r.init = specs[k].init;
    r.snr_db = kInf;
    r.trial = trial;
    r.mse = sigmodel::mse_realigned(o.estimate, x);
    r.aligned_error = r.mse / (x.norm() * x.norm());
    r.iterations = o.iterations;
    r.seconds = o.seconds;
    r.converged = o.converged;
    rows[static_cast<std::size_t>(idx)] = r;
    write_trace(cfg, "", specs[k].label() + "_" + std::to_string(trial), o.trace);
    write_estimate(cfg, specs[k].label() + "_" + std::to_string(trial), o.estimate);
  });

  std::ofstream err(fs::path(cfg.out_dir) / "pulse_errors.csv");
  err << "solver,n,sq_error\n";
  std::ofstream summ(fs::path(cfg.out_dir) / "summary.csv");
  summ << "solver,mse,success\n";
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const auto& e = estimates[k];
    for (int n = 0; n < cfg.N; ++n)
      err << specs[k].label() << ',' << n << ',' << fmt((e.samples().row(n) - x.samples().row(n)).squaredNorm()) << '\n';
    summ << specs[k].label() << ',' << fmt(rows[k].mse) << ',' << (rows[k].mse < 1e-20 ? 1 : 0) << '\n';
  }
  finish_rows(cfg, rows);
  return rows;
}

std::vector<ResultRow> run_init_compare(const Config& cfg) {
  Config c = cfg;
  c.wf_tol = 0.0;  // every run uses exactly wf_iters iterations
  const MeasurementScheme scheme = make_scheme(cfg.scheme, cfg.M, cfg.P, cfg);
  auto rows = sweep(c, scheme, "", false, true);
  finish_rows(cfg, rows);

  std::ofstream out(fs::path(cfg.out_dir) / "summary.csv");
  out << "init,snr_db,mean_mse,mean_relative_mse_db\n";
  std::map<std::string, Series> series;
  for (const auto& [key, s] : summarize(rows)) {
    const auto& [scheme_label, solver, snr] = key;
    (void)scheme_label;
    out << solver << ',' << fmt(snr) << ',' << fmt(s.mean_mse) << ',' << fmt(10.0 * std::log10(s.mean_mse)) << '\n';
    series[solver].name = solver;
    series[solver].x.push_back(snr);
    series[solver].y.push_back(10.0 * std::log10(s.mean_mse));
  }
  if (cfg.svg) {
    std::vector<Series> v;
    for (auto& [k, s] : series) v.push_back(s);
    io::write_text((fs::path(cfg.out_dir) / "init_compare.svg").string(),
                   svg_line_chart("initialization comparison", "SNR (dB)", "mean final MSE (dB)", v));
  }
  return rows;
}

std::vector<ResultRow> run_snr_sweep(const Config& cfg) {
  const MeasurementScheme scheme = make_scheme(cfg.scheme, cfg.M, cfg.P, cfg);
  auto rows = sweep(cfg, scheme, "", true, true);
  finish_rows(cfg, rows);
  write_sweep_summary(cfg, rows, {{"", scheme}}, ground_truth(cfg, cfg.seed));
  return rows;
}

std::vector<ResultRow> run_scheme_compare(const Config& cfg) {
  const int M0 = 2 * cfg.N - 1;
  std::vector<SchemeCase> cases{
      {"simple-M" + std::to_string(M0) + "-P4", make_scheme("simple", M0, 4, cfg)},
      {"sphere-M" + std::to_string(M0) + "-P12", make_scheme("sphere", M0, 0, cfg)},
      {"simple-M" + std::to_string(3 * M0) + "-P4", make_scheme("simple", 3 * M0, 4, cfg)},
  };
  std::vector<ResultRow> rows;
  for (const auto& c : cases) {
    require(sigmodel::generating_family(c.scheme), "scheme not generating: " + c.label);
    auto part = sweep(cfg, c.scheme, c.label, true, true);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  finish_rows(cfg, rows);
  write_sweep_summary(cfg, rows, cases, ground_truth(cfg, cfg.seed));
  return rows;
}

std::vector<ResultRow> run_uniqueness_study(const Config& cfg) {
  const std::size_t S = cfg.sigmas.size();
  // [model][sigma][trial]
  std::vector<double> rank(2 * S * static_cast<std::size_t>(cfg.trials)), sep(rank.size());
  parallel_for(cfg.trials, cfg.threads, [&](int trial) {
    const std::uint64_t tseed = cfg.seed + static_cast<std::uint64_t>(trial);
    const BivariateSignal x = constant_polarization_signal(cfg.N, tseed);
    for (std::size_t s = 0; s < S; ++s)
      for (int model = 0; model < 2; ++model) {
        const std::uint64_t pseed = cell_seed(tseed, s, static_cast<std::uint64_t>(model) + 7);
        const BivariateSignal xp = model == 0 ? diagnostics::perturb_single(x, cfg.sigmas[s], pseed)
                                              : diagnostics::perturb_full(x, cfg.sigmas[s], pseed);
        const std::size_t idx = (static_cast<std::size_t>(model) * S + s) * static_cast<std::size_t>(cfg.trials) +
                                static_cast<std::size_t>(trial);
        rank[idx] = diagnostics::rank_deficiency(xp);
        sep[idx] = diagnostics::root_separation(xp);
      }
  });

  std::ofstream out(fs::path(cfg.out_dir) / "results.csv");
  out << "model,sigma,trials,mean_rank_deficiency,mean_root_separation\n";
  std::vector<Series> series(2);
  const char* names[2] = {"single", "full"};
  for (int model = 0; model < 2; ++model) {
    series[static_cast<std::size_t>(model)].name = names[model];
    for (std::size_t s = 0; s < S; ++s) {
      double mr = 0, ms = 0;
      for (int t = 0; t < cfg.trials; ++t) {
        const std::size_t idx = (static_cast<std::size_t>(model) * S + s) * static_cast<std::size_t>(cfg.trials) +
                                static_cast<std::size_t>(t);
        mr += rank[idx];
        ms += sep[idx];
      }
      mr /= cfg.trials;
      ms /= cfg.trials;
      out << names[model] << ',' << fmt(cfg.sigmas[s]) << ',' << cfg.trials << ',' << fmt(mr) << ',' << fmt(ms) << '\n';
      series[static_cast<std::size_t>(model)].x.push_back(std::log10(cfg.sigmas[s]));
      series[static_cast<std::size_t>(model)].y.push_back(mr);
    }
  }
  if (cfg.svg)
    io::write_text((fs::path(cfg.out_dir) / "uniqueness.svg").string(),
                   svg_line_chart("Sylvester rank deficiency", "log10 sigma", "mean rank deficiency", series));
  return {};
}

std::vector<ResultRow> run_crlb_table(const Config& cfg) {
  const MeasurementScheme scheme = make_scheme(cfg.scheme, cfg.M, cfg.P, cfg);
  const BivariateSignal x = ground_truth(cfg, cfg.seed);
  const MeasurementSet clean = sigmodel::measure(x, scheme);
  const double norm2 = x.norm() * x.norm();
  std::ofstream out(fs::path(cfg.out_dir) / "results.csv");
  out << "snr_db,sigma2,crlb,crlb_db\n";
  Series s{"CRLB", {}, {}};
  for (double snr : cfg.snr_db) {
    const double s2 = sigmodel::sigma2_for_snr(clean, snr);
    const double c = diagnostics::crlb_mse(x, scheme, s2);
    out << fmt(snr) << ',' << fmt(s2) << ',' << fmt(c) << ',' << fmt(rel_db(c, norm2)) << '\n';
    s.x.push_back(snr);
    s.y.push_back(rel_db(c, norm2));
  }
  if (cfg.svg)
    io::write_text((fs::path(cfg.out_dir) / "crlb.svg").string(),
                   svg_line_chart("CRLB", "SNR (dB)", "relative MSE bound (dB)", {s}));
  return {};
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
  for (const auto& [n, e] : kExperiments)
    if (name == n) return e;
  fail(ErrorKind::InvalidArgument, "unknown experiment '" + name + "'");
}

std::string experiment_name(Experiment e) {
  for (const auto& [n, x] : kExperiments)
    if (x == e) return n;
  return "unknown";
}

SolverSpec parse_solver(const std::string& name) {
  if (name == "right" || name == "left" || name == "sdp") return {name, "-"};
  if (name.rfind("wf-", 0) == 0) {
    const std::string init = name.substr(3);
    if (init == "spectral" || init == "random" || init == "right" || init == "left") return {"wf", init};
  }
  fail(ErrorKind::InvalidArgument, "unknown solver '" + name +
                                       "' (expected right, left, sdp, wf-spectral, wf-random, wf-right, wf-left)");
}

Config resolve(Config cfg) {
  const Experiment e = cfg.experiment;
  if (cfg.N == 0) cfg.N = e == Experiment::NoiselessPulse ? 64 : 32;
  require(cfg.N >= 2, "--n must be at least 2");
  if (cfg.M == 0) cfg.M = 2 * cfg.N - 1;
  require(cfg.M >= 1, "--m must be positive");
  if (cfg.trials == 0)
    cfg.trials = e == Experiment::NoiselessPulse ? 1 : e == Experiment::UniquenessStudy ? 1000 : 100;
  require(cfg.trials >= 1, "--trials must be at least 1");
  require(cfg.threads >= 1, "--threads must be at least 1");
  require(cfg.wf_iters >= 1 && cfg.sdp_iters >= 1, "iteration limits must be positive");
  require(cfg.scheme == "simple" || cfg.scheme == "sphere", "--scheme must be simple or sphere");
  require(!cfg.out_dir.empty(), "--out is required");

  if (cfg.snr_db.empty()) {
    switch (e) {
      case Experiment::NoiselessPulse: cfg.snr_db = {kInf}; break;
      case Experiment::InitCompare: cfg.snr_db = {10, 40, 60}; break;
      case Experiment::UniquenessStudy: break;
      default:
        for (int s = 0; s <= 80; s += 10) cfg.snr_db.push_back(s);
    }
  }
  if (cfg.solvers.empty()) {
    switch (e) {
      case Experiment::NoiselessPulse: cfg.solvers = {"right", "left", "sdp", "wf-spectral", "wf-right"}; break;
      case Experiment::InitCompare: cfg.solvers = {"wf-spectral", "wf-random", "wf-right", "wf-left"}; break;
      case Experiment::SnrSweep:
      case Experiment::SchemeCompare: cfg.solvers = {"right", "left", "sdp", "wf-right"}; break;
      default: break;
    }
  }
  for (const auto& s : cfg.solvers) parse_solver(s);
  if (e == Experiment::UniquenessStudy && cfg.sigmas.empty())
    for (int k = -16; k <= -2; ++k) cfg.sigmas.push_back(std::pow(10.0, k));
  for (double s : cfg.sigmas) require(s >= 0.0, "--sigmas must be nonnegative");

  if (e != Experiment::SchemeCompare && e != Experiment::UniquenessStudy) {
    const MeasurementScheme sch = make_scheme(cfg.scheme, cfg.M, cfg.P, cfg);
    cfg.P = sch.P();
    if (!sigmodel::generating_family(sch))
      fail(ErrorKind::SchemeNotGenerating, "scheme not generating: the projections do not span the Stokes space");
  }
  if (needs_algebraic(cfg.solvers) && e != Experiment::SchemeCompare)
    if (cfg.M < 2 * cfg.N - 1)
      fail(ErrorKind::Underdetermined, "algebraic solvers need M >= 2N - 1");
  return cfg;
}

SolveOutcome run_solver(const SolverSpec& spec, const MeasurementSet& y, const MeasurementScheme& scheme, int N,
                        double snr_db, std::uint64_t seed, const Config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveOutcome out;
  try {
    out = run_solver_unchecked(spec, y, scheme, N, snr_db, seed, cfg);
  } catch (const Error& e) {
    // A numerical breakdown on one noisy instance is a failed trial, not a
    // failed experiment. Divergence is still fatal.
    if (e.kind() == ErrorKind::Diverged || e.kind() == ErrorKind::InvalidArgument) throw;
    out = SolveOutcome{};
    out.estimate = BivariateSignal(sigmodel::SignalMat::Zero(N, 2));
    out.converged = false;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

namespace {

SolveOutcome run_solver_unchecked(const SolverSpec& spec, const MeasurementSet& y, const MeasurementScheme& scheme,
                                  int N, double snr_db, std::uint64_t seed, const Config& cfg) {
  SolveOutcome out;
  if (spec.family == "right" || spec.family == "left") {
    const auto r = algsolve::solve_algebraic(y, scheme, N,
                                             spec.family == "right" ? algsolve::Method::Right : algsolve::Method::Left);
    out.estimate = r.solution.signal;
    out.converged = !r.solution.degenerate;
  } else {
    const auto prob = itersolve::build_lifted(y, scheme, N);
    itersolve::IterResult r;
    if (spec.family == "sdp") {
      itersolve::SdpOptions o;
      o.lambda = std::isinf(snr_db) ? 0.0 : itersolve::sdp_lambda_for_snr(std::pow(10.0, snr_db / 10.0));
      o.tol = cfg.sdp_tol;
      o.max_iter = cfg.sdp_iters;
      r = itersolve::sdp_solve(prob, o);
    } else {
      CVec init;
      if (spec.init == "spectral") init = itersolve::init_spectral(prob);
      else if (spec.init == "random") init = itersolve::init_random_phase(prob, seed);
      else
        init = itersolve::init_sylvester(y, scheme, N,
                                         spec.init == "right" ? algsolve::Method::Right : algsolve::Method::Left);
      r = itersolve::wf_solve(prob, init, {cfg.wf_tol, cfg.wf_iters});
    }
    out.estimate = r.signal;
    out.trace = std::move(r.trace);
    out.iterations = r.iterations;
    out.converged = r.converged;
  }
  return out;
}

}  // namespace

std::vector<ResultRow> run(const Config& raw) {
  const Config cfg = resolve(raw);
  fs::create_directories(cfg.out_dir);
  io::write_text((fs::path(cfg.out_dir) / "config.json").string(), config_to_json(cfg));
  switch (cfg.experiment) {
    case Experiment::NoiselessPulse: return run_noiseless_pulse(cfg);
    case Experiment::InitCompare: return run_init_compare(cfg);
    case Experiment::SnrSweep: return run_snr_sweep(cfg);
    case Experiment::SchemeCompare: return run_scheme_compare(cfg);
    case Experiment::UniquenessStudy: return run_uniqueness_study(cfg);
    case Experiment::CrlbTable: return run_crlb_table(cfg);
  }
  return {};
}

}  // namespace ppr::bench
