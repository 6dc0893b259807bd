#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tippe/integrator.hpp"
#include "tippe/model.hpp"
#include "tippe/phases.hpp"
#include "tippe/sweep.hpp"

namespace tippe {

/// Parse or validation failure, with the offending location when known.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(const std::string& source, int line, const std::string& key,
              const std::string& message);

  int line() const { return line_; }             ///< 1-based, 0 if not tied to a line
  const std::string& key() const { return key_; }

private:
  int line_;
  std::string key_;
};

struct OutputNames
{
  std::string trajectory{"trajectory.csv"};
  std::string diagnostics{"diagnostics.csv"};
  std::string events{"events.csv"};
  std::string phases{"phases.json"};
  std::string summary{"summary.txt"};
  std::string sweep{"sweep.csv"};
  std::string potential{"potential.csv"};
  std::string minima{"potential_minima.csv"};
};

struct SweepBlock
{
  SweepAxis axis{SweepAxis::phi_dot0};
  std::vector<double> values;
};

struct PotentialBlock
{
  std::optional<double> lambda;  ///< defaults to the Jellett value of [initial]
  std::vector<double> D;         ///< explicit Routh values
  int D_count{0};                ///< or this many values spaced from D0 to D1
  double z_min{-0.999};
  double z_max{0.999};
  int z_count{1999};
  double bracket_lo{-1.0 + 1e-9};
  double bracket_hi{1.0 - 1e-9};
};

/**
 * Everything a command needs, with the reference top and initial state as
 * defaults.
 *
 * File format: `[section]` headers followed by `key = value` lines; `#` starts
 * a comment. Sections: params, initial, integration, phases, output, sweep,
 * potential. Unknown sections and keys, duplicate keys and malformed numbers
 * are rejected with the line number.
 */
struct RunConfig
{
  PhysicalConstants constants{reference_params().constants()};
  State initial{0.1, 0.0, 0.0, 155.0, 0.0, 0.0};
  IntegrationConfig integration;
  PhaseGates gates;
  OutputNames output;
  std::optional<SweepBlock> sweep;
  PotentialBlock potential;

  Params params() const { return Params(constants); }
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace tippe
