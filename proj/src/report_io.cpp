#include "holosim/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "holosim/errors.hpp"

namespace holosim {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ValidationError("cannot open " + temp.string() + " for writing");
    }
    out << contents;
    if (!out.good()) {
      std::error_code ec;
      fs::remove(temp, ec);
      throw NumericsError("write failed for " + temp.string());
    }
  }
  fs::rename(temp, target);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json gate_report_to_json(const GateReport& report) {
  nlohmann::json j;
  j["realized_gate"] = matrix_to_json(report.realized_gate.entries);
  j["basis_labels"] = report.realized_gate.basis_labels;
  j["fidelity_vs_analytic"] = report.fidelity_vs_analytic;
  j["leakage"] = report.leakage;
  j["unitarity_residual"] = report.unitarity_residual;
  return j;
}

nlohmann::json holonomy_report_to_json(const HolonomyReport& report) {
  nlohmann::json j;
  j["a_closed_form_residual"] = format_double(report.a_closed_form_residual);
  j["commutation_residual"] = format_double(report.commutation_residual);
  j["k22_integral"] = format_double(report.k22_integral);
  j["analytic_gate"] = matrix_to_json(report.analytic_gate);
  j["geometric_angle"] = report.geometric_angle;
  return j;
}

std::string robustness_csv(const std::vector<RobustnessRow>& rows) {
  std::ostringstream out;
  out << "epsilon,fidelity\n";
  for (const RobustnessRow& row : rows) {
    out << format_double(row.epsilon) << ',' << format_double(row.fidelity)
        << '\n';
  }
  return out.str();
}

std::string area_scan_csv(const std::vector<AreaRow>& rows) {
  std::ostringstream out;
  out << "alpha,area_k22zero,area_k22negbeta,phi_tau\n";
  for (const AreaRow& row : rows) {
    out << format_double(row.alpha0) << ','
        << format_double(row.area_k22_zero) << ','
        << (row.negbeta_singular ? std::string("singular")
                                 : format_double(row.area_k22_negbeta))
        << ',' << format_double(row.phi_tau) << '\n';
  }
  return out.str();
}

std::string population_csv(
    const std::vector<std::pair<double, double>>& points) {
  std::ostringstream out;
  out << "t_over_tau,population\n";
  for (const auto& [t, p] : points) {
    out << format_double(t) << ',' << format_double(p) << '\n';
  }
  return out.str();
}

std::string pulse_schedule_csv(const LambdaModel& m, int grid_size) {
  if (grid_size < 2) {
    throw ValidationError("pulse export: grid size must be >= 2");
  }
  std::ostringstream out;
  out << "t,delta,omega,kappa\n";
  for (int i = 0; i < grid_size; ++i) {
    const double t = m.period() * i / (grid_size - 1);
    const LambdaModel::Sample s = m.sample(t);
    out << format_double(t) << ',' << format_double(s.delta) << ','
        << format_double(s.omega) << ',' << format_double(s.kappa) << '\n';
  }
  return out.str();
}

nlohmann::json pulse_sidecar_json(const LambdaModel& m) {
  nlohmann::json j;
  j["theta"] = m.theta();
  j["phi"] = m.phi();
  j["k22_choice"] = to_string(m.k22_choice());
  j["tau"] = m.period();
  j["breakpoints"] = m.breakpoints();
  return j;
}

}  // namespace holosim
