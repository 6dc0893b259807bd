#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tippe/analysis.hpp"
#include "tippe/config.hpp"
#include "tippe/integrator.hpp"
#include "tippe/io.hpp"
#include "tippe/phases.hpp"

namespace tippe {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int model = 3;      ///< normal force nonpositive or closure breakdown
inline constexpr int numerical = 4;  ///< pole approach or step-size underflow
}  // namespace exit_code

int exit_code_for(RunStatus status);

/// Scalar figures of merit of one simulation.
struct RunSummary
{
  RunStatus status{RunStatus::completed};
  std::string reason;
  std::size_t samples{};
  std::size_t steps{};
  double t_end{};

  double lambda0{};
  double lambda_ratio{};       ///< lambda0 / lambda_thres
  double lambda_drift{};       ///< max |lambda(t) - lambda(0)|
  double routh_drift_rel{};    ///< max |D(t) - D(0)| / |D(0)|
  double etilde_drift_rel{};   ///< max |Etilde(t) - Etilde(0)| / |Etilde(0)|
  double E0{};
  double E_final{};
  double max_energy_increase{};  ///< max over k of E(t_{k+1}) - E(t_k)
  double min_gn{};
  double mean_gn{};
  double mg{};
  double met_max{};            ///< max |MET residual| with per-sample lambda
  double met_max_lambda0{};    ///< max |MET residual| with lambda(0)
  double omega3_final{};
  double omega3_inverted_limit{};  ///< -L1 / I3 at lambda0
  std::optional<double> epot_ratio_8s;  ///< E_pot(8 s) / E_pot(t0)
  double T_upp_D0{};
  int climb_theta_dot_changes{};  ///< theta_dot sign changes in [t_init, t_end]
  PhaseReport phases;
};

struct SimulationOutcome
{
  IntegrationResult run;
  std::vector<DiagnosticRow> diagnostics;
  PhaseReport phases;
  RunSummary summary;
};

SimulationOutcome simulate(const RunConfig& cfg);

RunSummary summarize(const IntegrationResult& run, const std::vector<DiagnosticRow>& diag,
                     const PhaseReport& phases, const Params& p);

std::string format_summary(const RunSummary& s);
std::string phases_json(const RunSummary& s);

/// Each command writes into `out_dir` (created if missing), reports problems on
/// `err` and returns an exit code from `exit_code`.
int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);
int cmd_potential(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);

/// Potential curves for the [potential] block.
std::vector<PotentialCurve> potential_curves(const RunConfig& cfg);

}  // namespace tippe
