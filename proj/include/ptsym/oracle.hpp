#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ptsym/witnesses.hpp"

// Brute-force verifiers. None of these is used by the library fast path.
namespace ptsym::oracle {

struct Tolerances {
  double propagator = 1e-9;    ///< U, V vs expm blocks
  double expm_vs_diag = 1e-10; ///< expm vs T exp(Lambda t) T^-1
  double noise_ode = 1e-7;     ///< closed-form force moments vs RK4
  double ff_engines = 1e-9;    ///< hand transcription vs generic engine
  double coeffs = 1e-9;        ///< closed-form vs general coefficients
  double depth = 1e-7;         ///< lambda_max path vs s-scan
  double symplectic = 1e-8;    ///< invariant formula vs direct spectrum
  double sink = 1e-10;         ///< sink construction identities (relative)
};

struct OracleConfig {
  int expm_terms = 20;
  int ode_steps_per_period = 2000;
  std::array<double, 2> s_scan_bounds{-3.0, 1.0};
  double s_scan_tol = 1e-10;
  Tolerances tol;

  /// Throws InvalidParams when ode_steps_per_period < 1000 or a tolerance <= 0.
  void validate() const;
};

/// exp(M t) by scaling and squaring around a truncated Taylor series.
Mat4c expm(const Mat4c& M, double t, int terms = 20);

/// Sigma(t) from dSigma/dt = M Sigma + Sigma M+ + L0, Sigma(0) = 0, classical RK4.
Mat4c moment_ode(const Mat4c& M, const Mat4c& L0, double t, int steps);

/// RK4 step count for integrating to t with at least steps_per_period per
/// oscillation (or per e-fold in the exponential regime), never below 1000.
int ode_steps(const ModelParams& p, double t, int steps_per_period);

/// Lee depth by bisection on the ordering parameter s: the largest s for which
/// -K_s is still positive definite (Cholesky test), tau = (1 - s_th)/2.
double s_scan_depth(const GaussianCoeffs& c, std::array<double, 2> bounds = {-3.0, 1.0},
                    double tol = 1e-10);

/// Symplectic eigenvalues (ascending) as moduli of the spectrum of Omega sigma.
std::array<double, 2> symplectic_spectrum(const Mat4r& sigma);

struct CheckResult {
  std::string name;
  int samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  /// One line per check; deterministic for a fixed seed.
  std::string format() const;
};

/// Randomised agreement suites over oscillatory, exponential and near-EP points.
VerificationReport run_verification(const OracleConfig& cfg, std::uint64_t seed, int samples);

}  // namespace ptsym::oracle
