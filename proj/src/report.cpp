// Copyright 2026 The ion-gate-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iongate/report.hpp"

#include <algorithm>
#include <array>

namespace iongate::report {

namespace {

void digest_line(std::ostream& os, const std::string& digest) {
  os << "# config_digest=" << digest << "\n";
}

}  // namespace

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
  digest_line(os, scan.config_digest);
  os << "x,p_g,p_up,p_down\n";
  for (const auto& p : scan.points) {
    os << format_double(p.x) << ',' << format_double(p.p_g) << ',' << format_double(p.p_up) << ','
       << format_double(p.p_down) << '\n';
  }
}

void write_budget_csv(std::ostream& os, const ErrorBudget& budget, const std::string& digest) {
  digest_line(os, digest);
  os << "channel,contribution\n";
  for (const auto& [channel, value] : budget.contributions) {
    os << channel_name(channel) << ',' << format_double(value) << '\n';
  }
}

void write_truth_table_csv(std::ostream& os, const std::vector<TruthTableRow>& rows,
                           const std::string& digest) {
  digest_line(os, digest);
  os << "input_n,input_level,expected_n,expected_level,expected_population,motion_preserved\n";
  for (const auto& r : rows) {
    os << r.input_n << ',' << level_name(r.input_level) << ',' << r.expected_n << ','
       << level_name(r.expected_level) << ',' << format_double(r.expected_population) << ','
       << format_double(r.motion_preserved) << '\n';
  }
}

void write_oracle_csv(std::ostream& os, const std::vector<oracles::OracleReport>& reports,
                      const std::string& digest) {
  digest_line(os, digest);
  os << "name,max_abs_error,tolerance,pass\n";
  for (const auto& r : reports) {
    os << r.name << ',' << format_double(r.max_abs_error) << ',' << format_double(r.tolerance)
       << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

void write_calibration_csv(std::ostream& os, const CalibrationResult& result) {
  digest_line(os, config_digest(result.config));
  os << "key,value\n";
  os << "lasers.rabi_quad_hz," << format_double(result.config.lasers.rabi_quad_hz) << '\n';
  os << "lasers.rabi_raman_hz," << format_double(result.config.lasers.rabi_raman_hz) << '\n';
  os << "bell_fidelity," << format_double(result.fidelity) << '\n';
  os << "sequence_duration_s," << format_double(result.sequence_duration) << '\n';
  os << "evaluated_points," << result.evaluated_points << '\n';
}

void write_scan_svg(std::ostream& os, const ScanResult& scan, const std::string& title) {
  constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  double x_lo = 0.0, x_hi = 1.0;
  if (!scan.points.empty()) {
    x_lo = scan.points.front().x;
    x_hi = scan.points.back().x;
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  auto px = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kMargin + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot_w
     << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kMargin / 2
     << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\" font-size=\"12\">" << scan.variable_name << " ["
     << format_double(x_lo) << ", " << format_double(x_hi) << "]</text>\n";

  struct Series {
    const char* name;
    const char* color;
    double ScanPoint::*field;
  };
  const std::array<Series, 3> series{{{"p_g", "#1f77b4", &ScanPoint::p_g},
                                      {"p_up", "#d62728", &ScanPoint::p_up},
                                      {"p_down", "#2ca02c", &ScanPoint::p_down}}};
  for (std::size_t s = 0; s < series.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << series[s].color << "\" points=\"";
    for (const auto& p : scan.points) os << px(p.x) << ',' << py(p.*series[s].field) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kMargin + 5 << "\" y=\"" << kMargin + 15 * (s + 1)
       << "\" font-size=\"11\" fill=\"" << series[s].color << "\">" << series[s].name
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace iongate::report
