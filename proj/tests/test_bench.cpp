#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ppr/bench.hpp"
#include "ppr/diagnostics.hpp"
#include "ppr/io.hpp"
#include "support.hpp"

using namespace ppr;
using namespace ppr::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ppr_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Config small(Experiment e, const std::string& dir) {
  Config c;
  c.experiment = e;
  c.N = 6;
  c.trials = 2;
  c.out_dir = scratch(dir).string();
  return c;
}

}  // namespace

TEST_CASE("names round trip") {
  for (const char* n : {"noiseless-pulse", "init-compare", "snr-sweep", "scheme-compare", "uniqueness-study", "crlb-table"})
    CHECK(experiment_name(parse_experiment(n)) == n);
  CHECK_THROWS_AS(parse_experiment("bogus"), Error);
  CHECK(parse_solver("wf-left").label() == "wf-left");
  CHECK(parse_solver("sdp").init == "-");
  CHECK_THROWS_AS(parse_solver("wf-magic"), Error);
}

TEST_CASE("config resolution") {
  Config c;
  c.experiment = Experiment::NoiselessPulse;
  c.out_dir = "x";
  const Config r = resolve(c);
  CHECK(r.N == 64);
  CHECK(r.M == 127);
  CHECK(r.P == 4);
  CHECK(r.solvers.size() == 5);

  c.experiment = Experiment::InitCompare;
  const Config ic = resolve(c);
  CHECK(ic.N == 32);
  CHECK(ic.trials == 100);
  CHECK(ic.snr_db == std::vector<double>{10, 40, 60});

  Config bad = c;
  bad.P = 3;
  CHECK_THROWS_WITH_AS(resolve(bad), doctest::Contains("not generating"), Error);
  bad = c;
  bad.M = 10;
  CHECK_THROWS_AS(resolve(bad), Error);
  bad = c;
  bad.solvers = {"nope"};
  CHECK_THROWS_AS(resolve(bad), Error);
  bad = c;
  bad.out_dir.clear();
  CHECK_THROWS_AS(resolve(bad), Error);
}

TEST_CASE("pulse generator") {
  const auto x = make_pulse(64);
  CHECK(x.length() == 64);
  CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(diagnostics::rank_deficiency(x) == 0);
  CHECK(make_pulse(64).samples() == x.samples());

  CHECK(random_signal(8, 3).norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(random_signal(8, 3).samples() == random_signal(8, 3).samples());
  const auto c = constant_polarization_signal(8, 2);
  CHECK(diagnostics::rank_deficiency(c) == 7);
}

TEST_CASE("shipped sphere points match the built-in centres") {
  const auto file = load_sphere_points(std::string(PPR_DATA_DIR) + "/sphere12.csv");
  const auto builtin = sigmodel::healpix_base_centers();
  REQUIRE(file.size() == builtin.size());
  for (std::size_t i = 0; i < file.size(); ++i) CHECK((file[i] - builtin[i]).norm() < 1e-15);
  CHECK_THROWS_AS(load_sphere_points("/nonexistent/points.csv"), Error);
}

TEST_CASE("schemes") {
  Config c;
  CHECK(make_scheme("simple", 9, 0, c).P() == 4);
  CHECK(make_scheme("simple", 9, 3, c).P() == 3);
  CHECK(make_scheme("sphere", 9, 0, c).P() == 12);
  CHECK_THROWS_AS(make_scheme("hex", 9, 0, c), Error);
}

TEST_CASE("parallel_for covers every index and propagates errors") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](int i) { hits[static_cast<std::size_t>(i)]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](int i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("results csv schema") {
  const fs::path dir = scratch("csv");
  fs::create_directories(dir);
  ResultRow r;
  r.experiment = "snr-sweep";
  r.solver = "wf";
  r.init = "right";
  r.snr_db = std::numeric_limits<double>::infinity();
  r.mse = 0.25;
  r.aligned_error = 0.25;
  write_results_csv((dir / "r.csv").string(), {r});
  const auto rows = read_csv(dir / "r.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "experiment");
  CHECK(rows[0][9] == "converged");
  CHECK(rows[1][3] == "inf");
}

TEST_CASE("svg chart is standalone") {
  const std::string s = svg_line_chart("t", "x", "y", {{"a", {0, 1, 2}, {1, 0.5, 0.25}}});
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s.find("http://www.w3.org/2000/svg") != std::string::npos);
}

TEST_CASE("crlb table") {
  Config c = small(Experiment::CrlbTable, "crlb");
  c.snr_db = {0, 10, 20, 30};
  run(c);
  const auto rows = read_csv(fs::path(c.out_dir) / "results.csv");
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double slope = (std::log10(std::stod(rows[i][2])) - std::log10(std::stod(rows[i - 1][2]))) / 10.0;
    CHECK(slope == doctest::Approx(-0.1).epsilon(1e-9));
  }
  std::ifstream a(fs::path(c.out_dir) / "results.csv");
  std::stringstream first;
  first << a.rdbuf();
  run(c);
  std::ifstream b(fs::path(c.out_dir) / "results.csv");
  std::stringstream second;
  second << b.rdbuf();
  CHECK(first.str() == second.str());
  CHECK(fs::exists(fs::path(c.out_dir) / "config.json"));

  c.P = 3;
  CHECK_THROWS_AS(run(c), Error);
}

TEST_CASE("snr sweep writes rows that match stored estimates") {
  Config c = small(Experiment::SnrSweep, "sweep");
  c.snr_db = {20, 60};
  c.solvers = {"right", "wf-right"};
  c.save_estimates = true;
  c.traces = true;
  c.threads = 2;
  const auto rows = run(c);
  CHECK(rows.size() == 2u * 2u * 2u);
  const auto csv = read_csv(fs::path(c.out_dir) / "results.csv");
  CHECK(csv.size() == rows.size() + 1);

  const auto truth = random_signal(c.N, c.seed);
  for (const auto& r : rows) {
    const std::string label = r.solver == "wf" ? "wf-" + r.init : r.solver;
    std::ostringstream snr;
    snr << r.snr_db;
    const fs::path est = fs::path(c.out_dir) / "estimates" / (label + "_" + std::to_string(r.trial) + "_snr" + snr.str() + ".json");
    REQUIRE(fs::exists(est));
    CHECK(sigmodel::mse_realigned(io::read_signal(est.string()), truth) == doctest::Approx(r.mse).epsilon(1e-12));
  }
  CHECK(fs::exists(fs::path(c.out_dir) / "traces" / "snr60" / "wf-right_0.csv"));
  CHECK(fs::exists(fs::path(c.out_dir) / "summary.csv"));

  // Same seed and thread count: identical rows apart from timings.
  c.out_dir = scratch("sweep2").string();
  const auto again = run(c);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(again[i].mse == rows[i].mse);
}

TEST_CASE("uniqueness study") {
  Config c = small(Experiment::UniquenessStudy, "uniq");
  c.trials = 5;
  c.sigmas = {1e-15, 1e-3};
  run(c);
  const auto rows = read_csv(fs::path(c.out_dir) / "results.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "model");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double sigma = std::stod(rows[i][1]);
    const double def = std::stod(rows[i][3]);
    if (sigma < 1e-13) CHECK(def == doctest::Approx(c.N - 1));
    if (sigma > 1e-4 && rows[i][0] == "full") CHECK(def == 0.0);
  }
}

TEST_CASE("noiseless pulse on a short pulse") {
  Config c;
  c.experiment = Experiment::NoiselessPulse;
  c.N = 16;
  c.solvers = {"right", "left", "wf-right"};
  c.out_dir = scratch("pulse").string();
  c.svg = true;
  const auto rows = run(c);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.mse < 1e-20);
  CHECK(read_csv(fs::path(c.out_dir) / "pulse_errors.csv").size() == 1 + 3 * 16);
  CHECK(fs::exists(fs::path(c.out_dir) / "signal.json"));
}

TEST_CASE("signal and measurement files round trip") {
  std::mt19937_64 rng(1);
  const auto x = support::random_signal(rng, 5);
  const auto back = io::signal_from_json(io::signal_to_json(x));
  CHECK(back.samples() == x.samples());

  io::MeasurementFile f;
  f.N = 5;
  f.scheme = sigmodel::sphere_scheme(9, sigmodel::healpix_base_centers());
  f.data = sigmodel::add_noise(sigmodel::measure(x, f.scheme), 0.5, 3);
  const auto g = io::measurements_from_json(io::measurements_to_json(f));
  CHECK(g.N == 5);
  CHECK(g.data.y == f.data.y);
  CHECK(g.data.sigma2 == f.data.sigma2);
  for (int p = 0; p < 12; ++p) CHECK(g.scheme.projection(p) == f.scheme.projection(p));
  CHECK_THROWS(io::signal_from_json("{\"N\": 2, \"x\": [[1, 0, 0, 0]]}"));
}
