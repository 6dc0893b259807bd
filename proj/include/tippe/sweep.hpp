#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tippe/integrator.hpp"
#include "tippe/model.hpp"
#include "tippe/phases.hpp"

namespace tippe {

enum class SweepAxis
{
  phi_dot0,
  nu_x0,
  nu_y0,
  theta_dot0,
  theta0,
};

std::string_view to_string(SweepAxis axis);
/// Throws std::invalid_argument for unknown names.
SweepAxis parse_sweep_axis(std::string_view name);

/// Base initial state with one field replaced.
State with_axis_value(const State& base, SweepAxis axis, double value);

struct SweepSpec
{
  Params params;
  State base;
  SweepAxis axis{SweepAxis::phi_dot0};
  std::vector<double> values;
  IntegrationConfig integration;
  PhaseGates gates;

  /// Nonempty finite values and a valid integration config.
  /// Throws std::invalid_argument.
  void validate() const;
};

struct RunFlags
{
  bool inverted{};
  bool smooth{};
  bool sync_phase_present{};
  bool gn_positive_throughout{};
};

RunFlags classify(const PhaseReport& phases, const IntegrationResult& run);

struct SweepRow
{
  std::size_t index{};
  double value{};
  State ic;
  double lambda{};
  double lambda_ratio{};  ///< lambda / lambda_thres, NaN outside the threshold window
  /// RunStatus name, or "invalid_initial_state" when the run could not start.
  std::string status;
  std::string reason;
  PhaseReport phases;
  RunFlags flags;
  double max_abs_nu_x{};
  double max_abs_nu_y{};
  double max_abs_theta_dot{};
  bool failed() const { return status != "completed"; }
};

/// Summary of one run, shared by the sweep and single simulations.
SweepRow evaluate_run(const Params& p, const State& ic, const IntegrationConfig& cfg,
                      const PhaseGates& gates);

/// Worker count: TIPPE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency, never more than `jobs`.
unsigned sweep_threads(std::size_t jobs);

/// Runs every value independently on a thread pool. Rows come back in input
/// order and failures are recorded per row.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

}  // namespace tippe
