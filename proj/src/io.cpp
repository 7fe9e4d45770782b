#include "ppr/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace ppr::io {

using json = nlohmann::json;
using sigmodel::BivariateSignal;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write " + path);
  out << text;
}

namespace {

json complex_pair(cd z) { return json::array({z.real(), z.imag()}); }

cd parse_complex(const json& j) {
  require(j.is_array() && j.size() == 2, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string signal_to_json(const BivariateSignal& x) {
  json rows = json::array();
  const auto& s = x.samples();
  for (int n = 0; n < x.length(); ++n)
    rows.push_back({s(n, 0).real(), s(n, 0).imag(), s(n, 1).real(), s(n, 1).imag()});
  return json{{"N", x.length()}, {"x", rows}}.dump(1);
}

BivariateSignal signal_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("signal file: ") + e.what());
  }
  require(j.contains("x") && j["x"].is_array(), "signal file: missing x");
  const auto& rows = j["x"];
  const int N = static_cast<int>(rows.size());
  require(N >= 1, "signal file: empty signal");
  if (j.contains("N")) require(j["N"].get<int>() == N, "signal file: N does not match x");
  sigmodel::SignalMat s(N, 2);
  for (int n = 0; n < N; ++n) {
    const auto& r = rows[static_cast<std::size_t>(n)];
    require(r.is_array() && r.size() == 4, "signal file: rows must be [re1, im1, re2, im2]");
    s(n, 0) = cd(r[0].get<double>(), r[1].get<double>());
    s(n, 1) = cd(r[2].get<double>(), r[3].get<double>());
  }
  return BivariateSignal(std::move(s));
}

void write_signal(const std::string& path, const BivariateSignal& x) {
  write_text(path, signal_to_json(x));
}

BivariateSignal read_signal(const std::string& path) { return signal_from_json(read_text(path)); }

std::string measurements_to_json(const MeasurementFile& f) {
  json proj = json::array();
  for (const auto& b : f.scheme.projections()) proj.push_back({complex_pair(b(0)), complex_pair(b(1))});
  json y = json::array();
  for (int m = 0; m < f.data.M(); ++m) {
    json row = json::array();
    for (int p = 0; p < f.data.P(); ++p) row.push_back(f.data.y(m, p));
    y.push_back(row);
  }
  return json{{"N", f.N},          {"M", f.scheme.M()}, {"P", f.scheme.P()},
              {"projections", proj}, {"y", y},           {"sigma2", f.data.sigma2}}
      .dump(1);
}

MeasurementFile measurements_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("measurement file: ") + e.what());
  }
  for (const char* key : {"N", "M", "P", "projections", "y"})
    require(j.contains(key), std::string("measurement file: missing ") + key);
  MeasurementFile f;
  f.N = j["N"].get<int>();
  const int M = j["M"].get<int>();
  const int P = j["P"].get<int>();
  std::vector<sigmodel::Jones> b;
  for (const auto& e : j["projections"]) {
    require(e.is_array() && e.size() == 2, "measurement file: projection must hold two entries");
    b.emplace_back(parse_complex(e[0]), parse_complex(e[1]));
  }
  require(static_cast<int>(b.size()) == P, "measurement file: P does not match projections");
  f.scheme = sigmodel::MeasurementScheme(M, std::move(b));

  const auto& y = j["y"];
  f.data.y.resize(M, P);
  if (y.size() == static_cast<std::size_t>(M) && (M == 0 || y[0].is_array())) {
    for (int m = 0; m < M; ++m) {
      require(y[static_cast<std::size_t>(m)].size() == static_cast<std::size_t>(P),
              "measurement file: y row length must be P");
      for (int p = 0; p < P; ++p) f.data.y(m, p) = y[static_cast<std::size_t>(m)][static_cast<std::size_t>(p)].get<double>();
    }
  } else {
    require(y.size() == static_cast<std::size_t>(M) * static_cast<std::size_t>(P),
            "measurement file: y must hold M*P values");
    for (int m = 0; m < M; ++m)
      for (int p = 0; p < P; ++p)
        f.data.y(m, p) = y[static_cast<std::size_t>(m * P + p)].get<double>();
  }
  f.data.sigma2 = j.value("sigma2", 0.0);
  return f;
}

void write_measurements(const std::string& path, const MeasurementFile& f) {
  write_text(path, measurements_to_json(f));
}

MeasurementFile read_measurements(const std::string& path) {
  return measurements_from_json(read_text(path));
}

void write_measurements_csv(const std::string& path, const sigmodel::MeasurementSet& y) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write " + path);
  out << "m,p,value\n" << std::setprecision(17);
  for (int m = 0; m < y.M(); ++m)
    for (int p = 0; p < y.P(); ++p) out << m << ',' << p << ',' << y.y(m, p) << '\n';
}

void write_trace_csv(const std::string& path, const std::vector<TraceEntry>& trace) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write " + path);
  out << "k,cost,residual,seconds\n" << std::setprecision(17);
  for (const auto& t : trace) out << t.k << ',' << t.cost << ',' << t.residual << ',' << t.seconds << '\n';
}

}  // namespace ppr::io
