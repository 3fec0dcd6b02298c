#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "ptsym/oracle.hpp"
#include "ptsym/sweep.hpp"

using namespace ptsym;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalidInput = 2, kRegime = 3 };

struct Common {
  double kappa = 0.0;
  double gamma = 0.0;
  std::string model = "full";
  std::string out;
  std::string format = "csv";
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_atomically(path, content);
  }
}

OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return OutputFormat::Csv;
  if (f == "json") return OutputFormat::Json;
  throw InvalidParams("unknown format '" + f + "'");
}

int run_evolve(const Common& c, double t_max, int steps) {
  const ModelParams p{1.0, c.kappa, c.gamma};
  p.validate();
  if (steps < 2) throw InvalidParams("--steps must be at least 2");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidParams("--t-max must be finite and >= 0");
  const CoeffModel model = parse_model(c.model);
  const OutputFormat fmt = parse_format(c.format);

  static const char* kCols[] = {"eps_t", "B1",   "B2",   "ReC1", "ImC1", "ReD", "ImD",
                                "ReDbar", "ImDbar", "tau", "tau1", "tau2", "EN"};
  std::string csv;
  for (const char* col : kCols) {
    csv += col;
    csv += ',';
  }
  csv += "flags\n";
  nlohmann::json rows = nlohmann::json::array();

  for (int i = 0; i < steps; ++i) {
    const double t = i == steps - 1 ? t_max : t_max * i / (steps - 1);
    const GaussianCoeffs g = coeffs_closed_form(model, p, t);
    const WitnessReport w = evaluate_witnesses(g);
    const double vals[] = {t,         g.B1,        g.B2,     g.C1.real(), g.C1.imag(),
                           g.D.real(), g.D.imag(), g.Dbar.real(), g.Dbar.imag(), w.tau,
                           w.tau1,     w.tau2,     w.EN};
    if (fmt == OutputFormat::Csv) {
      for (double v : vals) {
        csv += format_number(v);
        csv += ',';
      }
      csv += format_flags(w.flags);
      csv += '\n';
    } else {
      nlohmann::json row;
      for (std::size_t k = 0; k < std::size(vals); ++k) {
        if (std::isfinite(vals[k])) row[kCols[k]] = vals[k];
        else row[kCols[k]] = format_number(vals[k]);
      }
      row["flags"] = format_flags(w.flags);
      rows.push_back(std::move(row));
    }
  }

  if (fmt == OutputFormat::Csv) {
    emit(c.out, csv);
  } else {
    nlohmann::json doc;
    doc["metadata"] = {{"model", std::string(to_string(model))},
                       {"kappa_over_eps", c.kappa},
                       {"gamma_over_eps", c.gamma},
                       {"t_max", t_max},
                       {"steps", steps},
                       {"regime", std::string(to_string(classify(p)))},
                       {"tool_version", std::string(kToolVersion)}};
    doc["rows"] = std::move(rows);
    emit(c.out, doc.dump(1) + "\n");
  }
  return kOk;
}

int run_sink(const Common& c) {
  const ModelParams p{1.0, c.kappa, c.gamma};
  p.validate();
  const OutputFormat fmt = parse_format(c.format);
  const SinkDiagnostics d = sink_diagnostics(p);
  const std::pair<const char*, double> vals[] = {
      {"kappa_over_eps", c.kappa},   {"gamma_over_eps", c.gamma},
      {"nu_plus", d.nu_plus},        {"nu_minus", d.nu_minus},
      {"Lambda", d.Lambda},          {"Lambda_from_eigenvalues", d.Lambda_from_eigenvalues}};
  const std::string flags = format_flags(d.divergent ? kDivergent : kFlagNone);
  if (fmt == OutputFormat::Csv) {
    std::string header, row;
    for (const auto& [k, v] : vals) {
      header += k;
      header += ',';
      row += format_number(v);
      row += ',';
    }
    emit(c.out, header + "regime,flags\n" + row + std::string(to_string(classify(p))) + "," + flags + "\n");
  } else {
    nlohmann::json doc;
    for (const auto& [k, v] : vals) {
      if (std::isfinite(v)) doc[k] = v;
      else doc[k] = format_number(v);
    }
    doc["regime"] = std::string(to_string(classify(p)));
    doc["flags"] = flags;
    emit(c.out, doc.dump(1) + "\n");
  }
  return kOk;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidParams("cannot read config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-state witnesses for a PT-symmetric pair of coupled modes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common common;
  auto add_common = [&](CLI::App* sub, bool rates) {
    if (rates) {
      sub->add_option("--kappa", common.kappa, "parametric coupling kappa/eps");
      sub->add_option("--gamma", common.gamma, "gain/loss rate gamma/eps");
    }
    sub->add_option("--out", common.out, "output file (default stdout)");
    sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* evolve = app.add_subcommand("evolve", "time series of coefficients and witnesses");
  add_common(evolve, true);
  double t_max = 10.0;
  int steps = 101;
  evolve->add_option("--model", common.model, "full|sink|semiclassical|asymptotic");
  evolve->add_option("--t-max", t_max, "final eps*t");
  evolve->add_option("--steps", steps, "number of time samples");

  auto* sweep = app.add_subcommand("sweep", "grid over (kappa/eps, gamma/eps)");
  add_common(sweep, false);
  std::string config_path, model_opt, quantity_opt;
  std::optional<int> grid_n, threads;
  std::optional<double> time_frac, eps_t;
  std::optional<std::uint64_t> sweep_seed;
  sweep->add_option("--config", config_path, "key=value config file");
  sweep->add_option("--model", model_opt, "full|sink|semiclassical|asymptotic");
  sweep->add_option("--quantity", quantity_opt, "tau|tau1|tau2|en|lambda|ratio_tau1|ratio_en");
  sweep->add_option("--grid-n", grid_n, "points per axis");
  sweep->add_option("--time-frac", time_frac, "evaluate at this fraction of the period");
  sweep->add_option("--eps-t", eps_t, "evaluate at this fixed eps*t");
  sweep->add_option("--seed", sweep_seed, "recorded in the output metadata");
  sweep->add_option("--threads", threads, "worker threads (0 = OpenMP default)");

  auto* sink = app.add_subcommand("sink", "sink-reservoir eigenvalues and strength");
  add_common(sink, true);

  auto* verify = app.add_subcommand("verify", "oracle agreement suites");
  std::uint64_t verify_seed = 20240101;
  int samples = 200;
  std::optional<double> tolerance;
  int steps_per_period = 2000;
  verify->add_option("--seed", verify_seed, "sampling seed");
  verify->add_option("--samples", samples, "random points per check");
  verify->add_option("--tolerance", tolerance, "override every check tolerance");
  verify->add_option("--steps-per-period", steps_per_period, "RK4 resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (*evolve) return run_evolve(common, t_max, steps);
    if (*sink) return run_sink(common);
    if (*sweep) {
      SweepConfig cfg;
      if (!config_path.empty()) apply_config(cfg, read_key_values(slurp(config_path)));
      if (!model_opt.empty()) cfg.model = parse_model(model_opt);
      if (!quantity_opt.empty()) cfg.quantity = parse_quantity(quantity_opt);
      if (grid_n) cfg.kappa.n = cfg.gamma.n = *grid_n;
      if (time_frac && eps_t) throw InvalidParams("--time-frac and --eps-t are exclusive");
      if (time_frac) cfg.time = {TimeSpec::Kind::FixedFractionOfPeriod, *time_frac};
      if (eps_t) cfg.time = {TimeSpec::Kind::FixedTime, *eps_t};
      if (sweep_seed) cfg.seed = *sweep_seed;
      if (threads) cfg.threads = *threads;
      if (!common.out.empty()) cfg.output_path = common.out;
      if (sweep->count("--format")) cfg.format = parse_format(common.format);
      cfg.validate();
      const SweepResult r = run_sweep(cfg);
      emit(cfg.output_path, cfg.format == OutputFormat::Csv ? to_csv(r) : to_json(r));
      return kOk;
    }
    if (*verify) {
      oracle::OracleConfig cfg;
      cfg.ode_steps_per_period = steps_per_period;
      if (tolerance) {
        auto& t = cfg.tol;
        t.propagator = t.expm_vs_diag = t.noise_ode = t.ff_engines = t.coeffs = t.depth =
            t.symplectic = t.sink = *tolerance;
      }
      const auto report = oracle::run_verification(cfg, verify_seed, samples);
      std::cout << report.format();
      return report.all_passed() ? kOk : kVerifyFailed;
    }
  } catch (const InvalidParams& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kRegime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kOk;
}
