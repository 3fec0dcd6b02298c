#include "ptsym/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include "json.hpp"
#include <set>
#include <unistd.h>

namespace ptsym {

std::string_view to_string(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::Tau: return "tau";
    case SweepQuantity::Tau1: return "tau1";
    case SweepQuantity::Tau2: return "tau2";
    case SweepQuantity::EN: return "en";
    case SweepQuantity::Lambda: return "lambda";
    case SweepQuantity::RatioTau1: return "ratio_tau1";
    case SweepQuantity::RatioEN: return "ratio_en";
  }
  return "unknown";
}

std::string to_string(const TimeSpec& ts) {
  switch (ts.kind) {
    case TimeSpec::Kind::MaxOverPeriod: return "max_over_period";
    case TimeSpec::Kind::FixedFractionOfPeriod: return "fixed_fraction(" + format_number(ts.value) + ")";
    case TimeSpec::Kind::FixedTime: return "fixed_time(" + format_number(ts.value) + ")";
  }
  return "unknown";
}

double GridAxis::at(int i) const {
  if (i == n - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void SweepConfig::validate() const {
  for (const GridAxis* a : {&kappa, &gamma}) {
    if (!(a->min >= 0.0 && a->max <= 2.0 && a->min <= a->max))
      throw InvalidParams("grid bounds must satisfy 0 <= min <= max <= 2");
    if (a->n < 2 || a->n > 4096) throw InvalidParams("grid size must be in [2, 4096]");
  }
  if (time.kind == TimeSpec::Kind::FixedFractionOfPeriod && !(time.value > 0.0))
    throw InvalidParams("time fraction must be positive");
  if (time.kind == TimeSpec::Kind::FixedTime && !(time.value >= 0.0 && std::isfinite(time.value)))
    throw InvalidParams("fixed time must be finite and non-negative");
  if (threads < 0) throw InvalidParams("threads must be non-negative");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Quantity base_quantity(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::Tau: return Quantity::Tau;
    case SweepQuantity::Tau1:
    case SweepQuantity::RatioTau1: return Quantity::Tau1;
    case SweepQuantity::Tau2: return Quantity::Tau2;
    default: return Quantity::EN;
  }
}

struct Value {
  double v;
  Flags flags;
};

Value witness_value(const SweepConfig& cfg, CoeffModel model, const ModelParams& p, Quantity q) {
  switch (cfg.time.kind) {
    case TimeSpec::Kind::MaxOverPeriod: {
      const Extremum e = max_over_period(model, p, q);
      return {e.value, e.flags};
    }
    case TimeSpec::Kind::FixedFractionOfPeriod: {
      const auto r = evaluate_witnesses(coeffs_closed_form(model, p, cfg.time.value * period(p)));
      return {select(r, q), r.flags};
    }
    case TimeSpec::Kind::FixedTime: {
      const auto r = evaluate_witnesses(coeffs_closed_form(model, p, cfg.time.value));
      return {select(r, q), r.flags};
    }
  }
  return {kNaN, kRegimeError};
}

}  // namespace

RatioValue witness_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? RatioValue{1.0, kFlagNone} : RatioValue{-1.0, kUndefinedRatio};
  if (std::isinf(den)) return std::isinf(num) ? RatioValue{-1.0, kUndefinedRatio} : RatioValue{0.0, kFlagNone};
  return {num / den, kFlagNone};
}

SweepRow evaluate_cell(const SweepConfig& cfg, double kappa, double gamma) {
  const ModelParams p{1.0, kappa, gamma};
  SweepRow row;
  row.kappa_over_eps = kappa;
  row.gamma_over_eps = gamma;
  row.regime = classify(p);
  try {
    Value v{};
    if (cfg.quantity == SweepQuantity::Lambda) {
      const auto d = sink_diagnostics(p);
      v = {d.Lambda, d.divergent ? Flags{kDivergent} : Flags{kFlagNone}};
    } else if (cfg.quantity == SweepQuantity::RatioTau1 || cfg.quantity == SweepQuantity::RatioEN) {
      const Quantity q = base_quantity(cfg.quantity);
      const Value full = witness_value(cfg, CoeffModel::FullPhysical, p, q);
      const Value other = witness_value(cfg, cfg.model, p, q);
      const RatioValue r = witness_ratio(full.v, other.v);
      v = {r.value, other.flags | r.flags};
    } else {
      v = witness_value(cfg, cfg.model, p, base_quantity(cfg.quantity));
    }
    row.value = v.v;
    row.flags = v.flags;
  } catch (const RegimeError&) {
    row.value = kNaN;
    row.flags = kRegimeError;
  }
  return row;
}

SweepResult run_sweep_serial(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult r;
  r.config = cfg;
  r.rows.reserve(static_cast<std::size_t>(cfg.kappa.n) * cfg.gamma.n);
  for (int j = 0; j < cfg.gamma.n; ++j)
    for (int i = 0; i < cfg.kappa.n; ++i)
      r.rows.push_back(evaluate_cell(cfg, cfg.kappa.at(i), cfg.gamma.at(j)));
  return r;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult r;
  r.config = cfg;
  const int nk = cfg.kappa.n;
  const long total = static_cast<long>(nk) * cfg.gamma.n;
  r.rows.resize(total);
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (long idx = 0; idx < total; ++idx) {
    try {
      const int j = static_cast<int>(idx / nk), i = static_cast<int>(idx % nk);
      r.rows[idx] = evaluate_cell(cfg, cfg.kappa.at(i), cfg.gamma.at(j));
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return r;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const SweepResult& r) {
  std::string out = "kappa_over_eps,gamma_over_eps,value,flags,regime\n";
  for (const auto& row : r.rows) {
    out += format_number(row.kappa_over_eps);
    out += ',';
    out += format_number(row.gamma_over_eps);
    out += ',';
    out += format_number(row.value);
    out += ',';
    out += format_flags(row.flags);
    out += ',';
    out += to_string(row.regime);
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepResult& r) {
  using nlohmann::json;
  auto number = [](double x) -> json {
    if (std::isfinite(x)) return x;
    return format_number(x);
  };
  auto axis = [](const GridAxis& a) { return json{{"min", a.min}, {"max", a.max}, {"n", a.n}}; };
  json doc;
  doc["metadata"] = {{"model", std::string(to_string(r.config.model))},
                     {"quantity", std::string(to_string(r.config.quantity))},
                     {"time_spec", to_string(r.config.time)},
                     {"kappa_grid", axis(r.config.kappa)},
                     {"gamma_grid", axis(r.config.gamma)},
                     {"tool_version", std::string(kToolVersion)},
                     {"seed", r.config.seed}};
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"kappa_over_eps", number(row.kappa_over_eps)},
                    {"gamma_over_eps", number(row.gamma_over_eps)},
                    {"value", number(row.value)},
                    {"flags", format_flags(row.flags)},
                    {"regime", std::string(to_string(row.regime))}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(1) + "\n";
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into place: " + ec.message());
  }
}

namespace {

const std::set<std::string, std::less<>> kConfigKeys = {
    "kappa_min", "kappa_max", "kappa_n", "gamma_min", "gamma_max", "gamma_n",
    "grid_n", "model", "quantity", "time_spec", "time_frac", "time_value",
    "output_path", "format", "seed", "threads"};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw InvalidParams("bad number for " + key + ": '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw InvalidParams("bad integer for " + key + ": '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw InvalidParams("integer out of range for " + key);
  return static_cast<int>(x);
}

}  // namespace

std::map<std::string, std::string> read_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::size_t start = 0;
  int lineno = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (!t.empty()) {
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw InvalidParams("config line " + std::to_string(lineno) + ": expected key=value");
      const std::string key = trim(std::string_view(t).substr(0, eq));
      if (!kConfigKeys.count(key))
        throw InvalidParams("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      kv[key] = trim(std::string_view(t).substr(eq + 1));
    }
    start = end + 1;
  }
  return kv;
}

CoeffModel parse_model(std::string_view s) {
  const std::string m = lower(s);
  if (m == "full") return CoeffModel::FullPhysical;
  if (m == "sink") return CoeffModel::SinkPeriodic;
  if (m == "semiclassical") return CoeffModel::Semiclassical;
  if (m == "asymptotic") return CoeffModel::Asymptotic;
  throw InvalidParams("unknown model '" + std::string(s) + "'");
}

SweepQuantity parse_quantity(std::string_view s) {
  const std::string q = lower(s);
  for (auto v : {SweepQuantity::Tau, SweepQuantity::Tau1, SweepQuantity::Tau2, SweepQuantity::EN,
                 SweepQuantity::Lambda, SweepQuantity::RatioTau1, SweepQuantity::RatioEN}) {
    if (q == to_string(v)) return v;
  }
  if (q == "ratiotau1") return SweepQuantity::RatioTau1;
  if (q == "ratioen") return SweepQuantity::RatioEN;
  throw InvalidParams("unknown quantity '" + std::string(s) + "'");
}

void apply_config(SweepConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (!kConfigKeys.count(key)) throw InvalidParams("unknown key '" + key + "'");
    if (key == "kappa_min") cfg.kappa.min = to_double(key, value);
    else if (key == "kappa_max") cfg.kappa.max = to_double(key, value);
    else if (key == "kappa_n") cfg.kappa.n = to_int(key, value);
    else if (key == "gamma_min") cfg.gamma.min = to_double(key, value);
    else if (key == "gamma_max") cfg.gamma.max = to_double(key, value);
    else if (key == "gamma_n") cfg.gamma.n = to_int(key, value);
    else if (key == "model") cfg.model = parse_model(value);
    else if (key == "quantity") cfg.quantity = parse_quantity(value);
    else if (key == "output_path") cfg.output_path = value;
    else if (key == "seed") {
      const long long s = to_integer(key, value);
      if (s < 0) throw InvalidParams("seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "threads") cfg.threads = to_int(key, value);
    else if (key == "format") {
      const std::string f = lower(value);
      if (f == "csv") cfg.format = OutputFormat::Csv;
      else if (f == "json") cfg.format = OutputFormat::Json;
      else throw InvalidParams("unknown format '" + value + "'");
    } else if (key == "time_spec") {
      const std::string k = lower(value);
      if (k == "max_over_period") cfg.time.kind = TimeSpec::Kind::MaxOverPeriod;
      else if (k == "fixed_fraction") cfg.time.kind = TimeSpec::Kind::FixedFractionOfPeriod;
      else if (k == "fixed_time") cfg.time.kind = TimeSpec::Kind::FixedTime;
      else throw InvalidParams("unknown time_spec '" + value + "'");
    }
  }
  // grid_n and time_frac are shorthands applied after the specific keys
  if (auto it = kv.find("grid_n"); it != kv.end()) cfg.kappa.n = cfg.gamma.n = to_int(it->first, it->second);
  if (auto it = kv.find("time_value"); it != kv.end()) cfg.time.value = to_double(it->first, it->second);
  if (auto it = kv.find("time_frac"); it != kv.end()) {
    cfg.time.kind = TimeSpec::Kind::FixedFractionOfPeriod;
    cfg.time.value = to_double(it->first, it->second);
  }
}

}  // namespace ptsym
