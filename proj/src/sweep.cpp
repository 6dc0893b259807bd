#include "tippe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "tippe/analysis.hpp"
#include "tippe/potential.hpp"

namespace tippe {

std::string_view to_string(SweepAxis axis)
{
  switch (axis)
  {
    case SweepAxis::phi_dot0: return "phi_dot0";
    case SweepAxis::nu_x0: return "nu_x0";
    case SweepAxis::nu_y0: return "nu_y0";
    case SweepAxis::theta_dot0: return "theta_dot0";
    case SweepAxis::theta0: return "theta0";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name)
{
  for (SweepAxis a : {SweepAxis::phi_dot0, SweepAxis::nu_x0, SweepAxis::nu_y0,
                      SweepAxis::theta_dot0, SweepAxis::theta0})
  {
    if (to_string(a) == name)
    {
      return a;
    }
  }
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

State with_axis_value(const State& base, SweepAxis axis, double value)
{
  State s = base;
  switch (axis)
  {
    case SweepAxis::phi_dot0: s.phi_dot = value; break;
    case SweepAxis::nu_x0: s.nu_x = value; break;
    case SweepAxis::nu_y0: s.nu_y = value; break;
    case SweepAxis::theta_dot0: s.theta_dot = value; break;
    case SweepAxis::theta0: s.theta = value; break;
  }
  return s;
}

void SweepSpec::validate() const
{
  if (values.empty())
  {
    throw std::invalid_argument("sweep: values list is empty");
  }
  for (double v : values)
  {
    if (!std::isfinite(v))
    {
      throw std::invalid_argument("sweep: values must be finite");
    }
  }
  integration.validate();
}

RunFlags classify(const PhaseReport& phases, const IntegrationResult& run)
{
  RunFlags f;
  f.inverted = run.ok() && phases.inverted;
  f.smooth = f.inverted && phases.smooth;
  f.sync_phase_present = phases.sync_phase_present;
  const bool gn_event = std::any_of(run.events.begin(), run.events.end(), [](const Event& e) {
    return e.kind == EventKind::gn_nonpositive;
  });
  f.gn_positive_throughout = !gn_event && phases.min_gn > 0.0;
  return f;
}

SweepRow evaluate_run(const Params& p, const State& ic, const IntegrationConfig& cfg,
                      const PhaseGates& gates)
{
  SweepRow row;
  row.ic = ic;
  row.lambda = jellett(ic, p);
  row.lambda_ratio = p.inversion_window() ? row.lambda / thresholds(p).lambda_thres
                                          : std::numeric_limits<double>::quiet_NaN();
  IntegrationResult run;
  try
  {
    run = integrate(ic, p, cfg);
  }
  catch (const std::exception& e)
  {
    row.status = "invalid_initial_state";
    row.reason = e.what();
    return row;
  }
  row.status = std::string(to_string(run.status));
  row.reason = run.reason;
  row.phases = detect_phases(run.trajectory, run.events, p, gates);
  row.flags = classify(row.phases, run);
  for (const Sample& s : run.trajectory.samples)
  {
    row.max_abs_nu_x = std::max(row.max_abs_nu_x, std::abs(s.state.nu_x));
    row.max_abs_nu_y = std::max(row.max_abs_nu_y, std::abs(s.state.nu_y));
    row.max_abs_theta_dot = std::max(row.max_abs_theta_dot, std::abs(s.state.theta_dot));
  }
  return row;
}

unsigned sweep_threads(std::size_t jobs)
{
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TIPPE_THREADS"))
  {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
    {
      n = static_cast<unsigned>(v);
    }
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
  spec.validate();
  const std::size_t n = spec.values.size();
  std::vector<SweepRow> rows(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++)
    {
      const double v = spec.values[i];
      const State ic = with_axis_value(spec.base, spec.axis, v);
      SweepRow row;
      try
      {
        row = evaluate_run(spec.params, ic, spec.integration, spec.gates);
      }
      catch (const std::exception& e)
      {
        row.ic = ic;
        row.status = "analysis_failed";
        row.reason = e.what();
      }
      row.index = i;
      row.value = v;
      rows[i] = std::move(row);
    }
  };

  const unsigned threads = sweep_threads(n);
  if (threads <= 1)
  {
    worker();
    return rows;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
  {
    pool.emplace_back(worker);
  }
  pool.clear();
  return rows;
}

}  // namespace tippe
