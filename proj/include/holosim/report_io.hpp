#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "holosim/experiments.hpp"
#include "holosim/hamiltonian.hpp"
#include "holosim/holonomy.hpp"
#include "holosim/propagator.hpp"

namespace holosim {

// 17 significant digits, '.' decimal separator, no locale dependence.
std::string format_double(double value);

// Writes to <path>.tmp and renames into place, so a failed write never
// leaves a partial file behind. Creates parent directories.
void write_file_atomic(const std::string& path, const std::string& contents);

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json gate_report_to_json(const GateReport& report);
nlohmann::json holonomy_report_to_json(const HolonomyReport& report);

std::string robustness_csv(const std::vector<RobustnessRow>& rows);
std::string area_scan_csv(const std::vector<AreaRow>& rows);
std::string population_csv(
    const std::vector<std::pair<double, double>>& points);

// Pulse schedule sampled on a uniform grid: `t,delta,omega,kappa`.
std::string pulse_schedule_csv(const LambdaModel& m, int grid_size);
nlohmann::json pulse_sidecar_json(const LambdaModel& m);

}  // namespace holosim
