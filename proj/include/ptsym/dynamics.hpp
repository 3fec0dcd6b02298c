#pragma once

#include <string_view>

#include "ptsym/model.hpp"

namespace ptsym {

/// Coherent part of the solution a(t) = U a(0) + V a+(0) + f(t).
struct Propagator {
  Mat2c U;
  Mat2c V;
  double t = 0.0;

  /// The 4x4 evolution matrix P(t, 0) in the (a1, a1+, a2, a2+) ordering,
  /// using U_jk = P_{2j-1,2k-1}, V_jk = P_{2j-1,2k} and the conjugate rows.
  Mat4c as_matrix() const;
};

/// Closed form valid in every regime (the EP included).
Propagator propagator(const ModelParams& p, double t);

enum class ReservoirModel { FullPhysical, Sink, Semiclassical };

std::string_view to_string(ReservoirModel m);

/// <L(t) L+^T(t')> = L0 delta(t - t').
struct ReservoirSpec {
  ReservoirModel model = ReservoirModel::FullPhysical;
  Mat4c L0 = Mat4c::Zero();
};

/// Sink needs mu != 0 (throws EPDegenerate).
ReservoirSpec reservoir(ReservoirModel model, const ModelParams& p,
                        double ep_tol = kDefaultEpTol);

/// Equal-time force correlations <F(t) F+^T(t)>.
struct NoiseMoments {
  Mat4c FF = Mat4c::Zero();
  double t = 0.0;

  Mat2c F1() const { return FF.topLeftCorner<2, 2>(); }
  Mat2c F2() const { return FF.bottomRightCorner<2, 2>(); }
  Mat2c F12() const { return FF.topRightCorner<2, 2>(); }
};

/// Hand transcription of the physical-reservoir correlations, including the
/// secular (linear in t) terms. Valid in every regime.
NoiseMoments noise_moments_full(const ModelParams& p, double t);

/// Generic engine: integrates P L0 P+ over [0, t] in the eigenbasis of M.
/// Throws EPDegenerate when the eigenbasis is unavailable.
NoiseMoments ff_from_L0(const DynamicalSystem& sys, const Mat4c& L0, double t);

/// Force moments of the selected reservoir. Full uses the hand transcription,
/// Sink the generic engine with the tailored matrix, Semiclassical is zero.
NoiseMoments noise_moments(ReservoirModel model, const ModelParams& p, double t,
                           double ep_tol = kDefaultEpTol);

struct TailoredReservoir {
  Mat4c secular;  ///< strength matrix reproducing the linear-in-t terms
  Mat4c sink;     ///< physical strength minus the secular one
};

/// Requires the oscillatory regime (RegimeError / EPDegenerate otherwise).
TailoredReservoir tailor_reservoir(const ModelParams& p, double ep_tol = kDefaultEpTol);

struct SinkDiagnostics {
  double nu_plus = 0.0;   ///< doubly degenerate eigenvalue of the sink matrix
  double nu_minus = 0.0;  ///< doubly degenerate, negative for mu > 0, gamma > 0
  double Lambda = 0.0;    ///< sink strength 4 gamma (1 - eps^2/mu^2)
  double Lambda_from_eigenvalues = 0.0;  ///< 2 (nu_plus + nu_minus)
  bool divergent = false;                ///< at the EP: Lambda = -inf
};

/// Throws RegimeError in the exponential regime. At the EP returns
/// Lambda = -inf with divergent = true (or 0 if gamma = 0).
SinkDiagnostics sink_diagnostics(const ModelParams& p, double ep_tol = kDefaultEpTol);

/// Equal-time commutators implied by the coherent propagator plus the force
/// contribution: [a_j, a_k+] (should be identity) and [a_j, a_k] (should be 0).
struct Commutators {
  Mat2c a_adag;
  Mat2c a_a;

  /// max deviation from the canonical values
  double defect() const;
};

Commutators commutators(const Propagator& prop, const NoiseMoments& noise);

}  // namespace ptsym
