#pragma once

#include <string>
#include <vector>

#include "ppr/sigmodel.hpp"

namespace ppr::io {

// Signals: {"N": n, "x": [[re1, im1, re2, im2], ...]}
std::string signal_to_json(const sigmodel::BivariateSignal& x);
sigmodel::BivariateSignal signal_from_json(const std::string& text);
void write_signal(const std::string& path, const sigmodel::BivariateSignal& x);
sigmodel::BivariateSignal read_signal(const std::string& path);

// Measurements: {"N", "M", "P", "projections": [[[re, im], [re, im]], ...],
// "y": [[y(0,0), ..., y(0,P-1)], ...], "sigma2"}
struct MeasurementFile {
  int N = 0;
  sigmodel::MeasurementScheme scheme = sigmodel::simple_scheme(1);
  sigmodel::MeasurementSet data;
};
std::string measurements_to_json(const MeasurementFile& f);
MeasurementFile measurements_from_json(const std::string& text);
void write_measurements(const std::string& path, const MeasurementFile& f);
MeasurementFile read_measurements(const std::string& path);
void write_measurements_csv(const std::string& path, const sigmodel::MeasurementSet& y);

void write_trace_csv(const std::string& path, const std::vector<TraceEntry>& trace);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace ppr::io
