#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ptsym/witnesses.hpp"

namespace ptsym {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class SweepQuantity { Tau, Tau1, Tau2, EN, Lambda, RatioTau1, RatioEN };

std::string_view to_string(SweepQuantity q);

struct TimeSpec {
  enum class Kind { MaxOverPeriod, FixedFractionOfPeriod, FixedTime };
  Kind kind = Kind::MaxOverPeriod;
  double value = 0.0;  ///< fraction f of T, or eps*t
};

std::string to_string(const TimeSpec& ts);

struct GridAxis {
  double min = 0.0;
  double max = 1.0;
  int n = 101;

  double at(int i) const;
};

enum class OutputFormat { Csv, Json };

struct SweepConfig {
  GridAxis kappa;
  GridAxis gamma;
  CoeffModel model = CoeffModel::FullPhysical;
  SweepQuantity quantity = SweepQuantity::Tau;
  TimeSpec time;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 0;
  int threads = 0;  ///< 0: OpenMP default

  /// Throws InvalidParams: bounds in [0, 2], min <= max, n in [2, 4096], f > 0.
  void validate() const;
};

struct SweepRow {
  double kappa_over_eps = 0.0;
  double gamma_over_eps = 0.0;
  double value = 0.0;
  Flags flags = kFlagNone;
  Regime regime = Regime::Oscillatory;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;  ///< gamma outer, kappa inner, ascending
};

struct RatioValue {
  double value = 1.0;
  Flags flags = kFlagNone;
};

/// num/den with 0/0 -> 1 and x/0 (x > 0) -> -1 plus kUndefinedRatio. A
/// divergent denominator gives 0, two divergent values are undefined.
RatioValue witness_ratio(double num, double den);

/// One grid point, eps = 1. Never throws for a valid config: regime problems
/// become NaN values with kRegimeError.
SweepRow evaluate_cell(const SweepConfig& cfg, double kappa, double gamma);

/// Reference implementation, one cell after another.
SweepResult run_sweep_serial(const SweepConfig& cfg);

/// OpenMP over cells; rows gathered by index, bit-identical to the serial run.
SweepResult run_sweep(const SweepConfig& cfg);

/// "%.17g", with nan/inf/-inf spelled out.
std::string format_number(double x);

std::string to_csv(const SweepResult& r);
std::string to_json(const SweepResult& r);

/// Write to a temporary sibling and rename over the target.
void write_atomically(const std::string& path, const std::string& content);

/// Flat key=value config: '#' comments, blank lines ignored. Unknown keys throw.
std::map<std::string, std::string> read_key_values(const std::string& text);

/// Apply key=value pairs on top of cfg (keys: kappa_min, kappa_max, kappa_n,
/// gamma_min, gamma_max, gamma_n, grid_n, model, quantity, time_spec,
/// time_frac, time_value, output_path, format, seed, threads).
void apply_config(SweepConfig& cfg, const std::map<std::string, std::string>& kv);

CoeffModel parse_model(std::string_view s);
SweepQuantity parse_quantity(std::string_view s);

}  // namespace ptsym
