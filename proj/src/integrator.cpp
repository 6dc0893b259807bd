#include "tippe/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tippe {

void IntegrationConfig::validate() const
{
  auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("invalid integration config: ") + what);
  };
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) fail("need finite t1 >= t0");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail("tolerances must be positive");
  if (!(dt_out > 0.0)) fail("dt_out must be positive");
  if (!(max_step > 0.0)) fail("max_step must be positive");
}

std::string_view to_string(EventKind kind)
{
  switch (kind)
  {
    case EventKind::phi_dot_zero_crossing: return "phi_dot_zero_crossing";
    case EventKind::theta_local_min: return "theta_local_min";
    case EventKind::theta_local_max: return "theta_local_max";
    case EventKind::gn_nonpositive: return "gn_nonpositive";
  }
  return "unknown";
}

std::string_view to_string(RunStatus status)
{
  switch (status)
  {
    case RunStatus::completed: return "completed";
    case RunStatus::gn_nonpositive: return "gn_nonpositive";
    case RunStatus::pole_approach: return "pole_approach";
    case RunStatus::step_underflow: return "step_underflow";
    case RunStatus::model_breakdown: return "model_breakdown";
  }
  return "unknown";
}

namespace {

constexpr double kEventResolution = 1e-9;
constexpr int kEventSubdivisions = 4;

struct Watch
{
  EventKind rising_kind;
  EventKind falling_kind;
  bool detect_rising;
  std::function<double(double)> value;
  double last{};
};

// Bisection on a bracket [lo, hi] where f(lo) and f(hi) lie on opposite sides
// of zero. `below(v)` is true on the lo side.
template <typename F, typename Side>
std::pair<double, double> refine(F&& f, Side&& lo_side, double lo, double hi)
{
  while (hi - lo > kEventResolution)
  {
    const double mid = 0.5 * (lo + hi);
    if (lo_side(f(mid)))
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace

IntegrationResult integrate(const State& s0, const Params& p,
                            const IntegrationConfig& cfg)
{
  cfg.validate();
  if (!is_finite(s0) || !(s0.theta > 0.0 && s0.theta < std::numbers::pi))
  {
    throw std::invalid_argument("integrate: initial state must be finite with theta in (0, pi)");
  }

  IntegrationResult res;
  Trajectory& traj = res.trajectory;
  traj.t_begin = cfg.t0;
  traj.t_end = cfg.t0;
  traj.dt_out = cfg.dt_out;
  if (cfg.t1 == cfg.t0)
  {
    return res;
  }

  traj.samples.push_back({cfg.t0, s0});
  const auto n_out = static_cast<std::size_t>(std::floor((cfg.t1 - cfg.t0) / cfg.dt_out + 1e-9));
  std::size_t next_k = 1;
  auto grid_time = [&](std::size_t k) {
    return std::min(cfg.t0 + static_cast<double>(k) * cfg.dt_out, cfg.t1);
  };

  try
  {
    if (normal_force(s0, p).nonpositive())
    {
      res.events.push_back({EventKind::gn_nonpositive, cfg.t0, s0, -1, cfg.t0, cfg.t0});
      if (cfg.gn_policy == GnPolicy::halt)
      {
        res.status = RunStatus::gn_nonpositive;
        res.reason = "normal force nonpositive at t0";
        return res;
      }
    }
  }
  catch (const ModelBreakdown& e)
  {
    res.status = RunStatus::model_breakdown;
    res.reason = e.what();
    return res;
  }

  const Segment* current = nullptr;
  auto component = [&](std::size_t i) {
    return [&, i](double t) { return current->eval(t, i); };
  };
  std::vector<Watch> watches;
  watches.push_back({EventKind::phi_dot_zero_crossing, EventKind::phi_dot_zero_crossing,
                     true, component(2), s0.phi_dot});
  watches.push_back({EventKind::theta_local_min, EventKind::theta_local_max, true,
                     component(1), s0.theta_dot});
  watches.push_back({EventKind::gn_nonpositive, EventKind::gn_nonpositive, false,
                     [&](double t) { return normal_force(from_array(current->eval(t)), p).gn; },
                     normal_force(s0, p).gn});

  auto observe = [&](const Segment& step, const Vec<6>& y_new) {
    traj.segments.push_back(step);
    current = &traj.segments.back();

    std::vector<Event> found;
    for (Watch& w : watches)
    {
      double prev_t = step.t;
      double prev_v = w.last;
      for (int j = 1; j <= kEventSubdivisions; ++j)
      {
        const double tj = j == kEventSubdivisions
                              ? step.t_end()
                              : step.t + step.h * static_cast<double>(j) / kEventSubdivisions;
        const double vj = w.value(tj);
        const bool rising = prev_v < 0.0 && vj >= 0.0;
        const bool falling = prev_v > 0.0 && vj <= 0.0;
        if ((rising && w.detect_rising) || falling)
        {
          auto [lo, hi] = rising
                              ? refine(w.value, [](double v) { return v < 0.0; }, prev_t, tj)
                              : refine(w.value, [](double v) { return v > 0.0; }, prev_t, tj);
          const double te = 0.5 * (lo + hi);
          found.push_back({rising ? w.rising_kind : w.falling_kind, te,
                           from_array(step.eval(te)), rising ? 1 : -1, lo, hi});
        }
        prev_t = tj;
        prev_v = vj;
      }
      w.last = prev_v;
    }
    std::sort(found.begin(), found.end(),
              [](const Event& a, const Event& b) { return a.t < b.t; });

    double limit = step.t_end();
    bool halt = false;
    for (const Event& e : found)
    {
      if (halt)
      {
        break;
      }
      res.events.push_back(e);
      if (e.kind == EventKind::gn_nonpositive && cfg.gn_policy == GnPolicy::halt)
      {
        halt = true;
        limit = e.t;
        res.status = RunStatus::gn_nonpositive;
        res.reason = "normal force reached zero at t = " + std::to_string(e.t);
      }
    }

    while (next_k <= n_out && grid_time(next_k) <= limit)
    {
      const double tk = grid_time(next_k);
      traj.samples.push_back({tk, from_array(step.eval(tk))});
      ++next_k;
    }
    traj.t_end = limit;
    if (halt)
    {
      return false;
    }

    const double theta = y_new[0];
    if (!(theta > 0.0 && theta < std::numbers::pi) || std::abs(std::sin(theta)) < 1e-8)
    {
      res.status = RunStatus::pole_approach;
      res.reason = "symmetry axis reached a pole of the Euler chart at t = " +
                   std::to_string(step.t_end());
      return false;
    }
    return true;
  };

  auto rhs = [&](double, const Vec<6>& y) { return to_array(euler_rhs(from_array(y), p)); };
  const StepControl ctl{cfg.rel_tol, cfg.abs_tol, cfg.max_step, 1e-14};

  try
  {
    const EngineStatus st = integrate_dopri5<6>(rhs, to_array(s0), cfg.t0, cfg.t1, ctl, observe);
    if (st == EngineStatus::step_underflow)
    {
      res.status = RunStatus::step_underflow;
      res.reason = "step size fell below 1e-14 s at t = " + std::to_string(traj.t_end);
    }
  }
  catch (const PoleSingularity& e)
  {
    res.status = RunStatus::pole_approach;
    res.reason = e.what();
  }
  catch (const ModelBreakdown& e)
  {
    res.status = RunStatus::model_breakdown;
    res.reason = e.what();
  }
  return res;
}

State dense_eval(const Trajectory& traj, double t)
{
  if (traj.samples.empty() || !(t >= traj.t_begin && t <= traj.t_end))
  {
    throw std::out_of_range("dense_eval: t outside the trajectory span");
  }
  auto hit = std::lower_bound(traj.samples.begin(), traj.samples.end(), t,
                              [](const Sample& s, double v) { return s.t < v; });
  if (hit != traj.samples.end() && hit->t == t)
  {
    return hit->state;
  }
  auto seg = std::upper_bound(traj.segments.begin(), traj.segments.end(), t,
                              [](double v, const Segment& s) { return v < s.t; });
  if (seg == traj.segments.begin())
  {
    throw std::out_of_range("dense_eval: t before the first step");
  }
  --seg;
  return from_array(seg->eval(t));
}

std::vector<Sample> resample(const Trajectory& traj, double dt)
{
  if (!(dt > 0.0))
  {
    throw std::invalid_argument("resample: dt must be positive");
  }
  std::vector<Sample> out;
  if (traj.samples.empty())
  {
    return out;
  }
  const auto n = static_cast<std::size_t>(std::floor((traj.t_end - traj.t_begin) / dt + 1e-9));
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
  {
    const double t = std::min(traj.t_begin + static_cast<double>(k) * dt, traj.t_end);
    out.push_back({t, dense_eval(traj, t)});
  }
  return out;
}

namespace {

// Integral of component i of the step polynomial over [step.t, t].
double integrate_component(const Segment& step, double t, std::size_t i)
{
  // Three-point Gauss-Legendre is exact for the quartic dense output.
  static constexpr double node = 0.77459666924148338;
  static constexpr double w_outer = 5.0 / 9.0;
  static constexpr double w_mid = 8.0 / 9.0;
  const double half = 0.5 * (t - step.t);
  const double mid = step.t + half;
  return half * (w_outer * step.eval(mid - half * node, i) + w_mid * step.eval(mid, i) +
                 w_outer * step.eval(mid + half * node, i));
}

}  // namespace

PrecessionAngle::PrecessionAngle(const Trajectory& traj) : traj_(&traj)
{
  at_step_start_.reserve(traj.segments.size());
  double phi = 0.0;
  for (const Segment& seg : traj.segments)
  {
    at_step_start_.push_back(phi);
    phi += integrate_component(seg, seg.t_end(), 2);
  }
}

double PrecessionAngle::operator()(double t) const
{
  const Trajectory& traj = *traj_;
  if (traj.samples.empty() || !(t >= traj.t_begin && t <= traj.t_end))
  {
    throw std::out_of_range("PrecessionAngle: t outside the trajectory span");
  }
  if (traj.segments.empty())
  {
    return 0.0;
  }
  auto seg = std::upper_bound(traj.segments.begin(), traj.segments.end(), t,
                              [](double v, const Segment& s) { return v < s.t; });
  if (seg != traj.segments.begin())
  {
    --seg;
  }
  const auto idx = static_cast<std::size_t>(seg - traj.segments.begin());
  return at_step_start_[idx] + integrate_component(*seg, t, 2);
}

}  // namespace tippe
