#pragma once

#include <array>

#include "ptsym/coeffs.hpp"
#include "ptsym/flags.hpp"

namespace ptsym {

inline constexpr double kGaussianDepthBound = 0.5;
inline constexpr double kPhysicalDepthBound = 1.0;

/// Hermitian matrix of the quadratic form of the s-ordered characteristic
/// function in (mu1, mu1*, mu2, mu2*). Diagonal entries -(B_j + (1-s)/2).
Mat4c depth_matrix(const GaussianCoeffs& c, double s = 1.0);

struct Depths {
  double tau = 0.0;   ///< global Lee depth, lambda_max of the s=1 matrix
  double tau1 = 0.0;  ///< max(0, |C1| - B1)
  double tau2 = 0.0;
  Flags flags = kFlagNone;
};

/// Throws NonHermitianInput if the assembled matrix is not Hermitian to 1e-10.
Depths nonclassicality_depth(const GaussianCoeffs& c);

/// Covariance of (q1, p1, q2, -p2) in vacuum units (vacuum = identity).
struct CovariancePT {
  Mat4r sigma = Mat4r::Identity();
  double Delta = 1.0;  ///< det sigma
  double delta = 2.0;  ///< det s1 + det s2 + 2 det s12
  double nu_minus_symp = 1.0;
};

CovariancePT partial_transpose_covariance(const GaussianCoeffs& c);

struct Negativity {
  double EN = 0.0;  ///< natural log
  CovariancePT cov;
};

/// Throws ComplexSymplecticEigenvalue when the symplectic spectrum of
/// sigma^PT is not real and positive, or sigma^PT is not positive definite.
Negativity negativity(const GaussianCoeffs& c);

struct WitnessReport {
  double tau = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double EN = 0.0;  ///< +inf for a nonphysical covariance (flagged)
  Flags flags = kFlagNone;
};

WitnessReport evaluate_witnesses(const GaussianCoeffs& c);

/// T = 2 pi / sqrt(1 - (kappa^2 + gamma^2)/eps^2) in units of 1/eps, i.e.
/// 2 pi / mu. Throws EPDegenerate at the EP, RegimeError beyond it.
double period(const ModelParams& p, double ep_tol = kDefaultEpTol);

enum class Quantity { Tau, Tau1, Tau2, EN };

double select(const WitnessReport& w, Quantity q);

struct Extremum {
  double value = 0.0;
  double argmax_t = 0.0;
  Flags flags = kFlagNone;  ///< flags of the witness report at argmax_t
};

struct MaxSearch {
  int samples = 512;
  double rel_t_resolution = 1e-6;
};

/// Maximum of the quantity over [t0, t0 + T] for the closed-form model:
/// uniform sampling then golden-section refinement around the best sample.
Extremum max_over_period(CoeffModel model, const ModelParams& p, Quantity q,
                         double window_start = 0.0, const MaxSearch& search = {},
                         double ep_tol = kDefaultEpTol);

/// Same search for all four quantities sharing the sampling pass.
std::array<Extremum, 4> max_over_period_all(CoeffModel model, const ModelParams& p,
                                            double window_start = 0.0,
                                            const MaxSearch& search = {},
                                            double ep_tol = kDefaultEpTol);

}  // namespace ptsym
