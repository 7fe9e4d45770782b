#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "ppr/bench.hpp"

namespace ppr::bench {

bool operator<(const ResultRow& a, const ResultRow& b) {
  return std::tie(a.experiment, a.scheme, a.solver, a.init, a.snr_db, a.trial) <
         std::tie(b.experiment, b.scheme, b.solver, b.init, b.snr_db, b.trial);
}

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

}  // namespace

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write " + path);
  const bool with_scheme = std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return !r.scheme.empty(); });
  out << "experiment,solver,init,snr_db,trial,mse,aligned_error,iterations,seconds,converged";
  out << (with_scheme ? ",scheme\n" : "\n");
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.solver << ',' << r.init << ',' << num(r.snr_db) << ',' << r.trial << ','
        << num(r.mse) << ',' << num(r.aligned_error) << ',' << r.iterations << ',' << num(r.seconds) << ','
        << (r.converged ? 1 : 0);
    if (with_scheme) out << ',' << r.scheme;
    out << '\n';
  }
}

std::string config_to_json(const Config& cfg) {
  nlohmann::json j;
  j["experiment"] = experiment_name(cfg.experiment);
  j["N"] = cfg.N;
  j["M"] = cfg.M;
  j["P"] = cfg.P;
  j["snr_db"] = cfg.snr_db;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["solvers"] = cfg.solvers;
  j["scheme"] = cfg.scheme;
  j["sphere_points"] = cfg.sphere_points;
  j["signal_file"] = cfg.signal_file;
  j["threads"] = cfg.threads;
  j["wf_iters"] = cfg.wf_iters;
  j["wf_tol"] = cfg.wf_tol;
  j["sdp_iters"] = cfg.sdp_iters;
  j["sdp_tol"] = cfg.sdp_tol;
  j["sigmas"] = cfg.sigmas;
  j["traces"] = cfg.traces;
  j["save_estimates"] = cfg.save_estimates;
  return j.dump(2);
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::string svg_line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<Series>& series) {
  const double W = 640, H = 420, L = 70, R = 150, T = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) {
    x0 -= 1;
    x1 += 1;
  }
  if (!(y1 > y0)) {
    y0 -= 1;
    y1 += 1;
  }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

  std::ostringstream o;
  o << std::setprecision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + k * (x1 - x0) / 4, yv = y0 + k * (y1 - y0) / 4;
    o << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << xv << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << yv << "</text>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  o << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (T + H - B) / 2
    << ")\">" << ylabel << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* c = colors[s % 7];
    o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i)
      if (std::isfinite(series[s].x[i]) && std::isfinite(series[s].y[i]))
        o << px(series[s].x[i]) << ',' << py(series[s].y[i]) << ' ';
    o << "\"/>\n";
    const double ly = T + 16.0 * static_cast<double>(s);
    o << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly << "\" stroke=\"" << c
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << W - R + 34 << "\" y=\"" << ly + 4 << "\">" << series[s].name << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace ppr::bench
