#include "ptsym/oracle.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "ptsym/linalg.hpp"

namespace ptsym::oracle {

void OracleConfig::validate() const {
  if (ode_steps_per_period < 1000) throw InvalidParams("ode_steps_per_period must be >= 1000");
  if (expm_terms < 1) throw InvalidParams("expm_terms must be positive");
  if (!(s_scan_bounds[0] < s_scan_bounds[1])) throw InvalidParams("s-scan bounds out of order");
  if (!(s_scan_tol > 0)) throw InvalidParams("s-scan tolerance must be positive");
  for (double x : {tol.propagator, tol.expm_vs_diag, tol.noise_ode, tol.ff_engines, tol.coeffs,
                   tol.depth, tol.symplectic, tol.sink}) {
    if (!(x > 0)) throw InvalidParams("tolerances must be positive");
  }
}

Mat4c expm(const Mat4c& M, double t, int terms) {
  Mat4c A = M * t;
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  A /= std::ldexp(1.0, squarings);

  Mat4c result = Mat4c::Identity(), term = Mat4c::Identity();
  for (int k = 1; k <= terms; ++k) {
    term = term * A / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Mat4c moment_ode(const Mat4c& M, const Mat4c& L0, double t, int steps) {
  const Mat4c Mh = M.adjoint();
  auto rhs = [&](const Mat4c& S) -> Mat4c { return M * S + S * Mh + L0; };
  Mat4c S = Mat4c::Zero();
  if (steps < 1 || t == 0.0) return S;
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const Mat4c k1 = rhs(S);
    const Mat4c k2 = rhs(S + 0.5 * h * k1);
    const Mat4c k3 = rhs(S + 0.5 * h * k2);
    const Mat4c k4 = rhs(S + h * k3);
    S += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return S;
}

int ode_steps(const ModelParams& p, double t, int steps_per_period) {
  const double rate = std::max(std::sqrt(std::abs(p.mu_squared())), p.epsilon) + p.gamma;
  const double periods = std::abs(t) * rate / (2.0 * std::numbers::pi);
  return std::max(1000, static_cast<int>(std::ceil(periods * steps_per_period)));
}

namespace {

bool negative_definite(const GaussianCoeffs& c, double s) {
  const Mat4c minus_k = -depth_matrix(c, s);
  Eigen::LLT<Mat4c> llt(minus_k);
  return llt.info() == Eigen::Success;
}

}  // namespace

double s_scan_depth(const GaussianCoeffs& c, std::array<double, 2> bounds, double tol) {
  double hi = std::min(bounds[1], 1.0);
  if (negative_definite(c, hi)) return 0.5 * (1.0 - hi);
  double lo = bounds[0];
  while (!negative_definite(c, lo)) lo -= 2.0 * (1.0 - lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (negative_definite(c, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (1.0 - 0.5 * (lo + hi));
}

std::array<double, 2> symplectic_spectrum(const Mat4r& sigma) {
  Mat4r omega = Mat4r::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  Eigen::EigenSolver<Mat4r> es(omega * sigma, false);
  std::array<double, 4> m;
  for (int i = 0; i < 4; ++i) m[i] = std::abs(es.eigenvalues()(i));
  std::sort(m.begin(), m.end());
  return {0.5 * (m[0] + m[1]), 0.5 * (m[2] + m[3])};
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerificationReport::format() const {
  std::string out = "seed " + std::to_string(seed) + "\n";
  char line[256];
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-28s samples=%-4d max_dev=%.3e tol=%.1e %s\n",
                  c.name.c_str(), c.samples, c.max_deviation, c.tolerance,
                  c.passed ? "PASS" : "FAIL");
    out += line;
  }
  out += all_passed() ? "all checks passed\n" : "verification FAILED\n";
  return out;
}

namespace {

struct Sample {
  ModelParams p;
  double t;
};

// Every fourth point sits within |mu| < 1e-3 of the exceptional curve.
std::vector<Sample> draw_samples(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rate(0.0, 1.5), time(0.0, 20.0),
      angle(0.0, 0.5 * std::numbers::pi), offset(-4e-7, 4e-7);
  std::vector<Sample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Sample s;
    if (i % 4 == 3) {
      const double th = angle(rng), r = 1.0 + offset(rng);
      s.p = {1.0, r * std::cos(th), r * std::sin(th)};
    } else {
      s.p = {1.0, rate(rng), rate(rng)};
    }
    s.t = time(rng);
    out.push_back(s);
  }
  return out;
}

double scaled_dev(const Mat4c& a, const Mat4c& ref) {
  return max_abs(Mat4c(a - ref)) / std::max(1.0, max_abs(ref));
}

double coeff_dev(const GaussianCoeffs& a, const GaussianCoeffs& b) {
  const double scale = std::max({1.0, std::abs(b.B1), std::abs(b.B2), std::abs(b.C1),
                                 std::abs(b.C2), std::abs(b.D), std::abs(b.Dbar)});
  const double d = std::max({std::abs(a.B1 - b.B1), std::abs(a.B2 - b.B2), std::abs(a.C1 - b.C1),
                             std::abs(a.C2 - b.C2), std::abs(a.D - b.D),
                             std::abs(a.Dbar - b.Dbar)});
  return d / scale;
}

bool well_conditioned(const ModelParams& p) {
  return std::abs(p.mu_squared()) > 0.01 && std::abs(p.epsilon * p.epsilon - p.kappa * p.kappa) > 0.01;
}

class Suite {
 public:
  explicit Suite(VerificationReport& r) : report_(r) {}

  void run(const std::string& name, double tol, const std::vector<Sample>& samples,
           const std::function<bool(const Sample&, double&)>& body) {
    CheckResult c;
    c.name = name;
    c.tolerance = tol;
    for (const auto& s : samples) {
      double dev = 0.0;
      if (!body(s, dev)) continue;
      ++c.samples;
      if (!(dev <= c.max_deviation)) c.max_deviation = std::isnan(dev) ? INFINITY : dev;
    }
    c.passed = c.samples > 0 && c.max_deviation < tol;
    report_.checks.push_back(c);
  }

 private:
  VerificationReport& report_;
};

GaussianCoeffs random_coeffs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0), v(-1.0, 1.0);
  GaussianCoeffs c;
  c.B1 = u(rng);
  c.B2 = u(rng);
  c.C1 = {v(rng), v(rng)};
  c.C2 = {v(rng), v(rng)};
  c.D = {v(rng), v(rng)};
  c.Dbar = {v(rng), v(rng)};
  return c;
}

}  // namespace

VerificationReport run_verification(const OracleConfig& cfg, std::uint64_t seed, int samples) {
  cfg.validate();
  if (samples < 1) throw InvalidParams("need at least one sample");
  VerificationReport report;
  report.seed = seed;
  Suite suite(report);
  const auto pts = draw_samples(seed, samples);
  const auto& tol = cfg.tol;

  suite.run("propagator_vs_expm", tol.propagator, pts, [&](const Sample& s, double& dev) {
    dev = scaled_dev(propagator(s.p, s.t).as_matrix(),
                     expm(dynamical_matrix(s.p), s.t, cfg.expm_terms));
    return true;
  });

  suite.run("expm_vs_diagonalisation", tol.expm_vs_diag, pts, [&](const Sample& s, double& dev) {
    if (!well_conditioned(s.p)) return false;
    const auto sys = build_system(s.p);
    Vec4c e;
    for (int i = 0; i < 4; ++i) e(i) = std::exp(sys.eigenvalues(i) * s.t);
    dev = scaled_dev(sys.T * e.asDiagonal() * sys.T_inv, expm(sys.M, s.t, cfg.expm_terms));
    return true;
  });

  suite.run("noise_vs_moment_ode", tol.noise_ode, pts, [&](const Sample& s, double& dev) {
    const auto L0 = reservoir(ReservoirModel::FullPhysical, s.p).L0;
    const Mat4c ref = moment_ode(dynamical_matrix(s.p), L0, s.t,
                                 ode_steps(s.p, s.t, cfg.ode_steps_per_period));
    dev = scaled_dev(noise_moments_full(s.p, s.t).FF, ref);
    return true;
  });

  suite.run("noise_engines", tol.ff_engines, pts, [&](const Sample& s, double& dev) {
    if (!well_conditioned(s.p)) return false;
    const auto L0 = reservoir(ReservoirModel::FullPhysical, s.p).L0;
    dev = scaled_dev(ff_from_L0(build_system(s.p), L0, s.t).FF,
                     noise_moments_full(s.p, s.t).FF);
    return true;
  });

  suite.run("coeffs_closed_vs_general", tol.coeffs, pts, [&](const Sample& s, double& dev) {
    dev = std::max(coeff_dev(coeffs_closed_form(CoeffModel::FullPhysical, s.p, s.t),
                             coeffs_general(ReservoirModel::FullPhysical, s.p, s.t)),
                   coeff_dev(coeffs_closed_form(CoeffModel::Semiclassical, s.p, s.t),
                             coeffs_general(ReservoirModel::Semiclassical, s.p, s.t)));
    if (classify(s.p) == Regime::Oscillatory && well_conditioned(s.p)) {
      dev = std::max(dev, coeff_dev(coeffs_closed_form(CoeffModel::SinkPeriodic, s.p, s.t),
                                    coeffs_general(ReservoirModel::Sink, s.p, s.t)));
    }
    return true;
  });

  suite.run("commutators", tol.ff_engines, pts, [&](const Sample& s, double& dev) {
    const auto prop = propagator(s.p, s.t);
    const double scale = std::max(1.0, max_abs(prop.as_matrix()) * max_abs(prop.as_matrix()));
    dev = commutators(prop, noise_moments_full(s.p, s.t)).defect() / scale;
    if (classify(s.p) == Regime::Oscillatory && well_conditioned(s.p))
      dev = std::max(dev, commutators(prop, noise_moments(ReservoirModel::Sink, s.p, s.t)).defect() / scale);
    return true;
  });

  suite.run("sink_identities", tol.sink, pts, [&](const Sample& s, double& dev) {
    if (classify(s.p) != Regime::Oscillatory || !well_conditioned(s.p)) return false;
    const auto tr = tailor_reservoir(s.p);
    const auto L0 = reservoir(ReservoirModel::FullPhysical, s.p).L0;
    const auto d = sink_diagnostics(s.p);
    const double scale = std::max(1.0, max_abs(tr.sink));
    dev = std::max(scaled_dev(Mat4c(L0 - tr.secular), tr.sink),
                   std::abs(d.Lambda - d.Lambda_from_eigenvalues) / std::max(1.0, std::abs(d.Lambda)));
    const auto ev = hermitian_eigenvalues(tr.sink);
    dev = std::max({dev, std::abs(ev[0] - d.nu_minus) / scale, std::abs(ev[3] - d.nu_plus) / scale});
    return true;
  });

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<GaussianCoeffs> sets;
  for (int i = 0; i < samples; ++i) sets.push_back(random_coeffs(rng));
  {
    CheckResult c{"depth_vs_s_scan", 0, 0.0, tol.depth, false};
    for (const auto& g : sets) {
      const double a = nonclassicality_depth(g).tau;
      const double b = s_scan_depth(g, cfg.s_scan_bounds, cfg.s_scan_tol);
      c.max_deviation = std::max(c.max_deviation, std::abs(a - b));
      ++c.samples;
    }
    c.passed = c.max_deviation < c.tolerance;
    report.checks.push_back(c);
  }

  suite.run("symplectic_invariants", tol.symplectic, pts, [&](const Sample& s, double& dev) {
    const auto g = coeffs_closed_form(CoeffModel::FullPhysical, s.p, std::min(s.t, 3.0));
    Negativity n;
    try {
      n = negativity(g);
    } catch (const ComplexSymplecticEigenvalue&) {
      return false;
    }
    const auto nu = symplectic_spectrum(n.cov.sigma);
    dev = std::abs(n.cov.nu_minus_symp - nu[0]) / std::max(1.0, nu[1]);
    return true;
  });

  return report;
}

}  // namespace ptsym::oracle
