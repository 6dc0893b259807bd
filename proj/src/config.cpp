#include "tippe/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tippe {

namespace {

std::string describe(const std::string& source, int line, const std::string& key,
                     const std::string& message)
{
  std::ostringstream os;
  os << source;
  if (line > 0)
  {
    os << ':' << line;
  }
  if (!key.empty())
  {
    os << ": " << key;
  }
  os << ": " << message;
  return os.str();
}

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
  {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Location
{
  const std::string& source;
  int line;
  std::string key;

  [[noreturn]] void fail(const std::string& message) const
  {
    throw ConfigError(source, line, key, message);
  }
};

double parse_double(std::string_view text, const Location& at)
{
  text = trim(text);
  double v{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last)
  {
    at.fail("expected a number, got '" + std::string(text) + "'");
  }
  if (!std::isfinite(v))
  {
    at.fail("value must be finite");
  }
  return v;
}

int parse_int(std::string_view text, const Location& at)
{
  text = trim(text);
  int v{};
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (text.empty() || ec != std::errc{} || ptr != last)
  {
    at.fail("expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, const Location& at)
{
  std::vector<double> out;
  text = trim(text);
  if (text.empty())
  {
    return out;
  }
  std::size_t pos = 0;
  for (;;)
  {
    const auto comma = text.find(',', pos);
    out.push_back(parse_double(text.substr(pos, comma - pos), at));
    if (comma == std::string_view::npos)
    {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

std::string parse_name(std::string_view text, const Location& at)
{
  text = trim(text);
  if (text.empty())
  {
    at.fail("expected a file name");
  }
  const std::filesystem::path p{std::string(text)};
  if (p.is_absolute() || p.has_parent_path())
  {
    at.fail("output names are plain file names inside the output directory");
  }
  return std::string(text);
}

using Handler = std::function<void(std::string_view, const Location&)>;

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& key,
                         const std::string& message)
    : std::runtime_error(describe(source, line, key, message)), line_(line), key_(key)
{
}

RunConfig parse_config(std::istream& in, const std::string& source)
{
  RunConfig cfg;
  std::optional<double> I1_coeff, I3_coeff;
  bool I1_abs = false, I3_abs = false;
  bool sweep_seen = false;
  std::optional<double> sw_start, sw_stop, sw_step;
  bool sw_values = false;
  SweepBlock sweep;
  int sweep_line = 0;

  auto num = [](double& target) {
    return Handler([&target](std::string_view v, const Location& at) { target = parse_double(v, at); });
  };
  auto integer = [](int& target) {
    return Handler([&target](std::string_view v, const Location& at) { target = parse_int(v, at); });
  };
  auto name = [](std::string& target) {
    return Handler([&target](std::string_view v, const Location& at) { target = parse_name(v, at); });
  };
  auto opt = [](std::optional<double>& target) {
    return Handler([&target](std::string_view v, const Location& at) { target = parse_double(v, at); });
  };

  PhysicalConstants& c = cfg.constants;
  IntegrationConfig& ic = cfg.integration;
  PhaseGates& pg = cfg.gates;
  OutputNames& o = cfg.output;
  PotentialBlock& pot = cfg.potential;

  std::map<std::string, std::map<std::string, Handler>> sections;
  sections["params"] = {
      {"m", num(c.m)},
      {"R", num(c.R)},
      {"alpha", num(c.alpha)},
      {"I1", [&](std::string_view v, const Location& at) { c.I1 = parse_double(v, at); I1_abs = true; }},
      {"I3", [&](std::string_view v, const Location& at) { c.I3 = parse_double(v, at); I3_abs = true; }},
      {"I1_mR2", opt(I1_coeff)},
      {"I3_mR2", opt(I3_coeff)},
      {"g", num(c.g)},
      {"mu", num(c.mu)},
  };
  sections["initial"] = {
      {"theta", num(cfg.initial.theta)},
      {"theta_dot", num(cfg.initial.theta_dot)},
      {"phi_dot", num(cfg.initial.phi_dot)},
      {"omega3", num(cfg.initial.omega3)},
      {"nu_x", num(cfg.initial.nu_x)},
      {"nu_y", num(cfg.initial.nu_y)},
  };
  sections["integration"] = {
      {"t0", num(ic.t0)},
      {"t1", num(ic.t1)},
      {"rel_tol", num(ic.rel_tol)},
      {"abs_tol", num(ic.abs_tol)},
      {"dt_out", num(ic.dt_out)},
      {"max_step", num(ic.max_step)},
      {"gn_policy",
       [&](std::string_view v, const Location& at) {
         v = trim(v);
         if (v == "halt")
           ic.gn_policy = GnPolicy::halt;
         else if (v == "warn")
           ic.gn_policy = GnPolicy::warn;
         else
           at.fail("expected 'halt' or 'warn'");
       }},
  };
  sections["phases"] = {
      {"theta_low", num(pg.theta_low)},
      {"theta_high", num(pg.theta_high)},
      {"amplitude_min", num(pg.amplitude_min)},
      {"window", num(pg.window)},
      {"sync_min", num(pg.sync_min)},
      {"final_theta_margin", num(pg.final_theta_margin)},
      {"final_theta_dot_max", num(pg.final_theta_dot_max)},
      {"smooth_theta", num(pg.smooth_theta)},
      {"smooth_max_changes", integer(pg.smooth_max_changes)},
  };
  sections["output"] = {
      {"trajectory", name(o.trajectory)},
      {"diagnostics", name(o.diagnostics)},
      {"events", name(o.events)},
      {"phases", name(o.phases)},
      {"summary", name(o.summary)},
      {"sweep", name(o.sweep)},
      {"potential", name(o.potential)},
      {"minima", name(o.minima)},
  };
  sections["sweep"] = {
      {"axis",
       [&](std::string_view v, const Location& at) {
         try
         {
           sweep.axis = parse_sweep_axis(trim(v));
         }
         catch (const std::invalid_argument& e)
         {
           at.fail(e.what());
         }
       }},
      {"values",
       [&](std::string_view v, const Location& at) {
         sweep.values = parse_list(v, at);
         sw_values = true;
       }},
      {"start", opt(sw_start)},
      {"stop", opt(sw_stop)},
      {"step", opt(sw_step)},
  };
  sections["potential"] = {
      {"lambda", opt(pot.lambda)},
      {"D", [&](std::string_view v, const Location& at) { pot.D = parse_list(v, at); }},
      {"D_count", integer(pot.D_count)},
      {"z_min", num(pot.z_min)},
      {"z_max", num(pot.z_max)},
      {"z_count", integer(pot.z_count)},
      {"bracket_lo", num(pot.bracket_lo)},
      {"bracket_hi", num(pot.bracket_hi)},
  };

  std::string section;
  std::set<std::string> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw))
  {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
    {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    if (line.front() == '[')
    {
      if (line.back() != ']')
      {
        throw ConfigError(source, line_no, "", "malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!sections.count(section))
      {
        throw ConfigError(source, line_no, "[" + section + "]", "unknown section");
      }
      if (section == "sweep")
      {
        sweep_seen = true;
        sweep_line = line_no;
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
    {
      throw ConfigError(source, line_no, "", "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty())
    {
      throw ConfigError(source, line_no, key, "key outside of any section");
    }
    const std::string qualified = section + "." + key;
    const Location at{source, line_no, qualified};
    auto& handlers = sections[section];
    auto h = handlers.find(key);
    if (h == handlers.end())
    {
      at.fail("unknown key");
    }
    if (!seen.insert(qualified).second)
    {
      at.fail("duplicate key");
    }
    h->second(value, at);
  }

  if ((I1_abs && I1_coeff) || (I3_abs && I3_coeff))
  {
    throw ConfigError(source, 0, "params", "give either I1/I3 or I1_mR2/I3_mR2, not both");
  }
  const double mR2 = c.m * c.R * c.R;
  if (I1_coeff)
  {
    c.I1 = *I1_coeff * mR2;
  }
  if (I3_coeff)
  {
    c.I3 = *I3_coeff * mR2;
  }
  try
  {
    (void)Params(c);
  }
  catch (const std::invalid_argument& e)
  {
    throw ConfigError(source, 0, "params", e.what());
  }
  try
  {
    ic.validate();
  }
  catch (const std::invalid_argument& e)
  {
    throw ConfigError(source, 0, "integration", e.what());
  }

  if (sweep_seen)
  {
    const bool range = sw_start || sw_stop || sw_step;
    if (sw_values && range)
    {
      throw ConfigError(source, sweep_line, "sweep", "give either values or start/stop/step");
    }
    if (range)
    {
      if (!(sw_start && sw_stop && sw_step) || !(*sw_step > 0.0) || *sw_stop < *sw_start)
      {
        throw ConfigError(source, sweep_line, "sweep",
                          "range needs start <= stop and a positive step");
      }
      const auto n = static_cast<long>(std::floor((*sw_stop - *sw_start) / *sw_step + 1e-9));
      for (long k = 0; k <= n; ++k)
      {
        sweep.values.push_back(*sw_start + static_cast<double>(k) * *sw_step);
      }
    }
    if (sweep.values.empty())
    {
      throw ConfigError(source, sweep_line, "sweep.values", "values list is empty");
    }
    cfg.sweep = sweep;
  }

  if (!(pot.z_min > -1.0 && pot.z_max < 1.0 && pot.z_min <= pot.z_max) || pot.z_count < 1)
  {
    throw ConfigError(source, 0, "potential",
                      "z grid must lie strictly inside (-1, 1) with z_min <= z_max and z_count >= 1");
  }
  if (!(pot.bracket_lo > -1.0 && pot.bracket_hi < 1.0 && pot.bracket_lo < pot.bracket_hi))
  {
    throw ConfigError(source, 0, "potential", "bracket must satisfy -1 < lo < hi < 1");
  }
  if (pot.D_count < 0 || (pot.D_count > 0 && !pot.D.empty()))
  {
    throw ConfigError(source, 0, "potential", "give either D or a positive D_count, not both");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError(path.string(), 0, "", "cannot open file");
  }
  return parse_config(in, path.string());
}

}  // namespace tippe
