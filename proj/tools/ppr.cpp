// ppr: run the polarimetric phase retrieval experiments from the command line.
//
//   ppr snr-sweep --n 16 --trials 20 --snr 20,40,60 --solvers right,wf-right --out runs/sweep --svg
//
// Exit status: 0 on success, 2 on a configuration error, 3 if a solver diverged.

#include <iostream>

#include <CLI11.hpp>

#include "ppr/bench.hpp"
#include "ppr/kernels.hpp"

int main(int argc, char** argv) {
  using namespace ppr;
  CLI::App app{"Polarimetric phase retrieval experiments"};
  app.require_subcommand(1);

  bench::Config cfg;
  std::string kernels = "auto";
  const char* names[] = {"noiseless-pulse", "init-compare", "snr-sweep", "scheme-compare", "uniqueness-study", "crlb-table"};
  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--n", cfg.N, "signal length N");
    sub->add_option("--m", cfg.M, "frequency samples M (default 2N-1)");
    sub->add_option("--p", cfg.P, "projections P (default: all of the scheme)");
    sub->add_option("--snr", cfg.snr_db, "SNR values in dB")->delimiter(',');
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials");
    sub->add_option("--seed", cfg.seed, "base seed; trial t uses seed + t");
    sub->add_option("--solvers", cfg.solvers, "right,left,sdp,wf-spectral,wf-random,wf-right,wf-left")->delimiter(',');
    sub->add_option("--scheme", cfg.scheme, "simple or sphere");
    sub->add_option("--sphere-points", cfg.sphere_points, "CSV of x,y,z unit vectors for the sphere scheme");
    sub->add_option("--signal", cfg.signal_file, "ground-truth signal JSON instead of the built-in generator");
    sub->add_option("--out", cfg.out_dir, "output directory")->required();
    sub->add_flag("--svg", cfg.svg, "also write SVG charts");
    sub->add_flag("--traces", cfg.traces, "write per-run convergence traces");
    sub->add_flag("--save-estimates", cfg.save_estimates, "write every estimate as signal JSON");
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--wf-iters", cfg.wf_iters, "Wirtinger flow iteration cap");
    sub->add_option("--wf-tol", cfg.wf_tol, "Wirtinger flow relative step tolerance");
    sub->add_option("--sdp-iters", cfg.sdp_iters, "SDP iteration cap");
    sub->add_option("--sdp-tol", cfg.sdp_tol, "SDP normalized residual tolerance");
    sub->add_option("--sigmas", cfg.sigmas, "perturbation levels for uniqueness-study")->delimiter(',');
    sub->add_option("--kernels", kernels, "auto, scalar or avx2");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.experiment = bench::parse_experiment(app.get_subcommands().front()->get_name());
    if (kernels == "scalar") kernels::set_active_isa(kernels::Isa::Scalar);
    else if (kernels == "avx2") kernels::set_active_isa(kernels::Isa::Avx2);
    else require(kernels == "auto", "--kernels must be auto, scalar or avx2");

    const auto rows = bench::run(cfg);
    std::cout << bench::experiment_name(cfg.experiment) << ": " << rows.size() << " rows written to " << cfg.out_dir
              << '\n';
  } catch (const Error& e) {
    std::cerr << "ppr: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Diverged: return 3;
      case ErrorKind::InvalidArgument:
      case ErrorKind::SchemeNotGenerating:
      case ErrorKind::Underdetermined: return 2;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "ppr: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
