#include "tippe/io.hpp"

#include <array>
#include <charconv>
#include <optional>

namespace tippe {

std::string format_double(double v)
{
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc{})
  {
    return "nan";
  }
  return std::string(buf.data(), ptr);
}

namespace {

class Row
{
public:
  explicit Row(std::ostream& os) : os_(os) {}
  ~Row() { os_ << '\n'; }
  Row(const Row&) = delete;
  Row& operator=(const Row&) = delete;

  Row& num(double v)
  {
    sep();
    os_ << format_double(v);
    return *this;
  }
  Row& opt(const std::optional<double>& v)
  {
    sep();
    if (v)
    {
      os_ << format_double(*v);
    }
    return *this;
  }
  Row& text(std::string_view s)
  {
    sep();
    os_ << s;
    return *this;
  }
  Row& integer(long long v)
  {
    sep();
    os_ << v;
    return *this;
  }
  Row& flag(bool b) { return integer(b ? 1 : 0); }

private:
  void sep()
  {
    if (!first_)
    {
      os_ << ',';
    }
    first_ = false;
  }
  std::ostream& os_;
  bool first_{true};
};

}  // namespace

void write_trajectory_csv(std::ostream& os, const std::vector<Sample>& samples,
                          const std::vector<DiagnosticRow>& diagnostics)
{
  os << kTrajectoryHeader << '\n';
  for (std::size_t i = 0; i < samples.size() && i < diagnostics.size(); ++i)
  {
    const State& s = samples[i].state;
    const DiagnosticRow& d = diagnostics[i];
    Row(os)
        .num(samples[i].t)
        .num(s.theta)
        .num(s.theta_dot)
        .num(s.phi_dot)
        .num(psi_dot(s))
        .num(s.omega3)
        .num(s.nu_x)
        .num(s.nu_y)
        .num(d.gn)
        .num(d.lambda)
        .num(d.D)
        .num(d.E)
        .num(d.E_trans)
        .num(d.E_rot)
        .num(d.E_pot)
        .num(d.Etilde)
        .num(d.E_dot)
        .num(d.tau_x)
        .num(d.tau_y)
        .num(d.tau_z)
        .num(d.xi);
  }
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticRow>& diagnostics)
{
  os << kDiagnosticsHeader << '\n';
  for (const DiagnosticRow& d : diagnostics)
  {
    Row(os)
        .num(d.t)
        .num(d.gn)
        .num(d.lambda)
        .num(d.D)
        .num(d.Etilde)
        .num(d.E)
        .num(d.E_trans)
        .num(d.E_rot)
        .num(d.E_pot)
        .num(d.E_dot)
        .num(d.tau_x)
        .num(d.tau_y)
        .num(d.tau_z)
        .num(d.met_residual)
        .num(d.met_residual_lambda0)
        .num(d.phi_dot_identity_residual)
        .num(d.phi_dot_identity_printed_residual)
        .num(d.etilde_minus_e)
        .num(d.etilde_minus_e_estimate)
        .num(d.xi);
  }
}

void write_events_csv(std::ostream& os, const std::vector<Event>& events)
{
  os << kEventsHeader << '\n';
  for (const Event& e : events)
  {
    Row(os)
        .text(to_string(e.kind))
        .num(e.t)
        .num(e.t_lo)
        .num(e.t_hi)
        .integer(e.direction)
        .num(e.state.theta)
        .num(e.state.theta_dot)
        .num(e.state.phi_dot)
        .num(e.state.omega3)
        .num(e.state.nu_x)
        .num(e.state.nu_y);
  }
}

void write_sweep_csv(std::ostream& os, SweepAxis axis, const std::vector<SweepRow>& rows)
{
  os << kSweepHeader << '\n';
  for (const SweepRow& r : rows)
  {
    Row(os)
        .integer(static_cast<long long>(r.index))
        .text(to_string(axis))
        .num(r.value)
        .num(r.ic.theta)
        .num(r.ic.theta_dot)
        .num(r.ic.phi_dot)
        .num(r.ic.omega3)
        .num(r.ic.nu_x)
        .num(r.ic.nu_y)
        .num(r.lambda)
        .num(r.lambda_ratio)
        .text(r.status)
        .opt(r.phases.t_init)
        .opt(r.phases.t_end)
        .opt(r.phases.T_inv)
        .flag(r.flags.sync_phase_present)
        .flag(r.flags.inverted)
        .flag(r.flags.smooth)
        .flag(r.flags.gn_positive_throughout)
        .num(r.phases.min_gn)
        .integer(r.phases.climb_theta_dot_changes)
        .num(r.max_abs_nu_x)
        .num(r.max_abs_nu_y)
        .num(r.max_abs_theta_dot);
  }
}

void write_potential_csv(std::ostream& os, const std::vector<PotentialCurve>& curves)
{
  os << kPotentialHeader << '\n';
  for (const PotentialCurve& c : curves)
  {
    for (std::size_t i = 0; i < c.z.size(); ++i)
    {
      Row(os).num(c.D).num(c.z[i]).num(c.V[i]);
    }
  }
}

void write_minima_csv(std::ostream& os, const std::vector<PotentialCurve>& curves)
{
  os << kMinimaHeader << '\n';
  for (const PotentialCurve& c : curves)
  {
    Row(os).num(c.D).num(c.minimum.z).num(c.minimum.V).flag(c.minimum.at_boundary);
  }
}

}  // namespace tippe
