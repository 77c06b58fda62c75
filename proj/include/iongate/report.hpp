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

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "iongate/experiments.hpp"
#include "iongate/oracles.hpp"

namespace iongate::report {

// CSV files start with "# config_digest=<hex>" followed by the header row.

void write_scan_csv(std::ostream& os, const ScanResult& scan);
void write_budget_csv(std::ostream& os, const ErrorBudget& budget, const std::string& digest);
void write_truth_table_csv(std::ostream& os, const std::vector<TruthTableRow>& rows,
                           const std::string& digest);
void write_oracle_csv(std::ostream& os, const std::vector<oracles::OracleReport>& reports,
                      const std::string& digest);
void write_calibration_csv(std::ostream& os, const CalibrationResult& result);

/// Line chart with one polyline each for p_g, p_up, p_down.
void write_scan_svg(std::ostream& os, const ScanResult& scan, const std::string& title);

}  // namespace iongate::report
