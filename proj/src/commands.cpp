#include "tippe/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "tippe/dynamics.hpp"
#include "tippe/potential.hpp"
#include "tippe/sweep.hpp"

namespace tippe {

namespace {

constexpr double kConservedTol = 1e-8;

std::ofstream open_output(const std::filesystem::path& path)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
  {
    throw std::runtime_error("cannot write " + path.string());
  }
  return os;
}

void prepare_dir(const std::filesystem::path& dir)
{
  if (!dir.empty())
  {
    std::filesystem::create_directories(dir);
  }
}

std::string fmt(double v, int digits = 8)
{
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(digits) << v;
  return os.str();
}

std::string fmt(const std::optional<double>& v, int digits = 8)
{
  return v ? fmt(*v, digits) : std::string("not detected");
}

nlohmann::json opt_json(const std::optional<double>& v)
{
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json num_json(double v)
{
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

int exit_code_for(RunStatus status)
{
  switch (status)
  {
    case RunStatus::completed: return exit_code::ok;
    case RunStatus::gn_nonpositive:
    case RunStatus::model_breakdown: return exit_code::model;
    case RunStatus::pole_approach:
    case RunStatus::step_underflow: return exit_code::numerical;
  }
  return exit_code::numerical;
}

RunSummary summarize(const IntegrationResult& run, const std::vector<DiagnosticRow>& diag,
                     const PhaseReport& phases, const Params& p)
{
  RunSummary s;
  s.status = run.status;
  s.reason = run.reason;
  s.samples = run.trajectory.samples.size();
  s.steps = run.trajectory.segments.size();
  s.t_end = run.trajectory.t_end;
  s.phases = phases;
  s.mg = p.m() * p.g();
  if (diag.empty())
  {
    return s;
  }

  const DiagnosticRow& d0 = diag.front();
  s.lambda0 = d0.lambda;
  s.lambda_ratio = p.inversion_window() ? s.lambda0 / thresholds(p).lambda_thres
                                        : std::numeric_limits<double>::quiet_NaN();
  s.E0 = d0.E;
  s.E_final = diag.back().E;
  s.min_gn = std::numeric_limits<double>::infinity();
  s.max_energy_increase = -std::numeric_limits<double>::infinity();
  double gn_sum = 0.0;
  for (std::size_t k = 0; k < diag.size(); ++k)
  {
    const DiagnosticRow& d = diag[k];
    s.lambda_drift = std::max(s.lambda_drift, std::abs(d.lambda - d0.lambda));
    if (d0.D != 0.0)
    {
      s.routh_drift_rel = std::max(s.routh_drift_rel, std::abs(d.D - d0.D) / std::abs(d0.D));
    }
    s.etilde_drift_rel =
        std::max(s.etilde_drift_rel, std::abs(d.Etilde - d0.Etilde) / std::abs(d0.Etilde));
    s.min_gn = std::min(s.min_gn, d.gn);
    gn_sum += d.gn;
    s.met_max = std::max(s.met_max, std::abs(d.met_residual));
    s.met_max_lambda0 = std::max(s.met_max_lambda0, std::abs(d.met_residual_lambda0));
    if (k > 0)
    {
      s.max_energy_increase = std::max(s.max_energy_increase, d.E - diag[k - 1].E);
    }
  }
  if (diag.size() < 2)
  {
    s.max_energy_increase = 0.0;
  }
  s.mean_gn = gn_sum / static_cast<double>(diag.size());
  s.omega3_final = run.trajectory.samples.back().state.omega3;

  const AsymptoticConstants ac = asymptotic_constants(s.lambda0, p);
  s.omega3_inverted_limit = ac.omega3_inverted;
  s.T_upp_D0 = nutation_period_bound(s.lambda0, ac.D0, p);

  const Trajectory& tr = run.trajectory;
  const double t8 = tr.t_begin + 8.0;
  if (t8 <= tr.t_end)
  {
    s.epot_ratio_8s = energy_split(dense_eval(tr, t8), p).E_pot / d0.E_pot;
  }

  if (phases.t_init && phases.t_end)
  {
    for (const Event& e : run.events)
    {
      if ((e.kind == EventKind::theta_local_min || e.kind == EventKind::theta_local_max) &&
          e.t >= *phases.t_init && e.t <= *phases.t_end)
      {
        ++s.climb_theta_dot_changes;
      }
    }
  }
  return s;
}

SimulationOutcome simulate(const RunConfig& cfg)
{
  const Params p = cfg.params();
  SimulationOutcome out;
  out.run = integrate(cfg.initial, p, cfg.integration);
  out.diagnostics = diagnose(out.run.trajectory.samples, p);
  out.phases = detect_phases(out.run.trajectory, out.run.events, p, cfg.gates);
  out.summary = summarize(out.run, out.diagnostics, out.phases, p);
  return out;
}

std::string format_summary(const RunSummary& s)
{
  std::ostringstream os;
  auto line = [&](const std::string& key, const std::string& value) {
    os << std::left << std::setw(28) << key << value << '\n';
  };
  const PhaseReport& ph = s.phases;
  line("status", std::string(to_string(s.status)));
  if (!s.reason.empty())
  {
    line("reason", s.reason);
  }
  line("samples", std::to_string(s.samples));
  line("accepted steps", std::to_string(s.steps));
  line("end time [s]", fmt(s.t_end));
  if (s.samples == 0)
  {
    line("note", "empty trajectory");
    return os.str();
  }
  os << '\n';
  line("lambda(0)", fmt(s.lambda0));
  line("lambda / lambda_thres", fmt(s.lambda_ratio, 5));
  line("lambda drift (abs)", fmt(s.lambda_drift, 3));
  line("lambda drift (rel)", fmt(s.lambda_drift / std::abs(s.lambda0), 3));
  line("lambda conserved", s.lambda_drift <= kConservedTol * std::abs(s.lambda0) ? "yes" : "no");
  line("D drift (rel)", fmt(s.routh_drift_rel, 3));
  line("D conserved", s.routh_drift_rel <= kConservedTol ? "yes" : "no");
  line("Etilde drift (rel)", fmt(s.etilde_drift_rel, 3));
  line("Etilde conserved", s.etilde_drift_rel <= kConservedTol ? "yes" : "no");
  os << '\n';
  line("E(0) [J]", fmt(s.E0));
  line("E(end) [J]", fmt(s.E_final));
  line("max E increase [J]", fmt(s.max_energy_increase, 3));
  line("min g_n [N]", fmt(s.min_gn));
  line("mean g_n [N]", fmt(s.mean_gn));
  line("mg [N]", fmt(s.mg));
  line("max MET residual [J]", fmt(s.met_max, 3));
  line("max MET residual, lambda(0)", fmt(s.met_max_lambda0, 3));
  os << '\n';
  line("t_init [s]", fmt(ph.t_init, 5));
  line("t_end [s]", fmt(ph.t_end, 5));
  line("T_inv [s]", fmt(ph.T_inv, 5));
  line("T_upp(D0) [s]", fmt(s.T_upp_D0, 5));
  line("theta_dot changes in climb", std::to_string(s.climb_theta_dot_changes));
  line("synchronisation phase", ph.sync_phase_present ? "yes" : "no");
  line("inverted", ph.inverted ? "yes" : "no");
  line("smooth", ph.smooth ? "yes" : "no");
  line("final theta [rad]", fmt(ph.final_theta, 6));
  line("final omega3 [rad/s]", fmt(s.omega3_final, 6));
  line("omega3 limit -L1/I3", fmt(s.omega3_inverted_limit, 6));
  line("E_pot(8 s) / E_pot(0)", fmt(s.epot_ratio_8s, 6));
  return os.str();
}

std::string phases_json(const RunSummary& s)
{
  const PhaseReport& ph = s.phases;
  nlohmann::ordered_json j;
  j["status"] = std::string(to_string(s.status));
  j["reason"] = s.reason;
  j["t_init"] = opt_json(ph.t_init);
  j["t_end"] = opt_json(ph.t_end);
  j["T_inv"] = opt_json(ph.T_inv);
  j["sync_phase_present"] = ph.sync_phase_present;
  j["inverted"] = ph.inverted;
  j["smooth"] = ph.smooth;
  j["min_gn"] = num_json(ph.min_gn);
  j["final_theta"] = num_json(ph.final_theta);
  j["final_theta_dot"] = num_json(ph.final_theta_dot);
  j["climb_theta_dot_changes"] = s.climb_theta_dot_changes;
  j["lambda0"] = num_json(s.lambda0);
  j["lambda_ratio"] = num_json(s.lambda_ratio);
  j["lambda_drift"] = num_json(s.lambda_drift);
  j["T_upp_D0"] = num_json(s.T_upp_D0);
  return j.dump(2) + "\n";
}

int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err)
{
  SimulationOutcome out;
  try
  {
    out = simulate(cfg);
  }
  catch (const std::invalid_argument& e)
  {
    err << "config error: " << e.what() << '\n';
    return exit_code::config;
  }

  prepare_dir(out_dir);
  {
    auto os = open_output(out_dir / cfg.output.trajectory);
    write_trajectory_csv(os, out.run.trajectory.samples, out.diagnostics);
  }
  {
    auto os = open_output(out_dir / cfg.output.diagnostics);
    write_diagnostics_csv(os, out.diagnostics);
  }
  {
    auto os = open_output(out_dir / cfg.output.events);
    write_events_csv(os, out.run.events);
  }
  {
    auto os = open_output(out_dir / cfg.output.phases);
    os << phases_json(out.summary);
  }
  {
    auto os = open_output(out_dir / cfg.output.summary);
    os << format_summary(out.summary);
  }

  const int code = exit_code_for(out.run.status);
  if (code != exit_code::ok)
  {
    err << "halt: " << to_string(out.run.status) << ": " << out.run.reason << '\n';
  }
  return code;
}

int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err)
{
  if (!cfg.sweep)
  {
    err << "config error: the sweep command needs a [sweep] section\n";
    return exit_code::config;
  }
  SweepSpec spec{cfg.params(), cfg.initial, cfg.sweep->axis, cfg.sweep->values,
                 cfg.integration, cfg.gates};
  std::vector<SweepRow> rows;
  try
  {
    rows = run_sweep(spec);
  }
  catch (const std::invalid_argument& e)
  {
    err << "config error: " << e.what() << '\n';
    return exit_code::config;
  }
  prepare_dir(out_dir);
  auto os = open_output(out_dir / cfg.output.sweep);
  write_sweep_csv(os, spec.axis, rows);
  for (const SweepRow& r : rows)
  {
    if (r.failed())
    {
      err << "run " << r.index << " (" << to_string(spec.axis) << " = " << fmt(r.value)
          << "): " << r.status << ": " << r.reason << '\n';
    }
  }
  return exit_code::ok;
}

std::vector<PotentialCurve> potential_curves(const RunConfig& cfg)
{
  const Params p = cfg.params();
  const PotentialBlock& pb = cfg.potential;
  const double lambda = pb.lambda.value_or(jellett(cfg.initial, p));

  std::vector<double> Ds = pb.D;
  if (Ds.empty())
  {
    const AsymptoticConstants ac = asymptotic_constants(lambda, p);
    const int n = pb.D_count > 0 ? pb.D_count : 11;
    for (int i = 0; i < n; ++i)
    {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      Ds.push_back(i == n - 1 && n > 1 ? ac.D1 : ac.D0 + f * (ac.D1 - ac.D0));
    }
  }

  std::vector<double> zs;
  for (int i = 0; i < pb.z_count; ++i)
  {
    zs.push_back(pb.z_count == 1 || i == pb.z_count - 1
                     ? (pb.z_count == 1 ? pb.z_min : pb.z_max)
                     : pb.z_min + (pb.z_max - pb.z_min) * i / (pb.z_count - 1));
  }

  std::vector<PotentialCurve> curves;
  for (double D : Ds)
  {
    PotentialCurve c;
    c.D = D;
    c.z = zs;
    for (double z : zs)
    {
      c.V.push_back(effective_potential(z, D, lambda, p));
    }
    c.minimum = potential_minimum(D, lambda, p, {pb.bracket_lo, pb.bracket_hi});
    curves.push_back(std::move(c));
  }
  return curves;
}

int cmd_potential(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err)
{
  std::vector<PotentialCurve> curves;
  try
  {
    curves = potential_curves(cfg);
  }
  catch (const std::exception& e)
  {
    err << "config error: " << e.what() << '\n';
    return exit_code::config;
  }
  prepare_dir(out_dir);
  {
    auto os = open_output(out_dir / cfg.output.potential);
    write_potential_csv(os, curves);
  }
  {
    auto os = open_output(out_dir / cfg.output.minima);
    write_minima_csv(os, curves);
  }
  return exit_code::ok;
}

}  // namespace tippe
