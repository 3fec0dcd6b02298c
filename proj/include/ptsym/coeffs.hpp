#pragma once

#include <array>
#include <string_view>

#include "ptsym/dynamics.hpp"

namespace ptsym {

/// Coefficients of the normal characteristic function of a two-mode Gaussian
/// state: B_j = <da_j+ da_j>, C_j = <da_j^2>, D = <da1 da2>, Dbar = -<da1+ da2>.
struct GaussianCoeffs {
  double B1 = 0.0;
  double B2 = 0.0;
  cplx C1{};
  cplx C2{};
  cplx D{};
  cplx Dbar{};
};

/// Closed-form variants for vacuum (or coherent) input.
enum class CoeffModel {
  FullPhysical,
  SinkPeriodic,   ///< full model with every linear-in-t term removed
  Semiclassical,  ///< no fluctuating forces at all
  Asymptotic,     ///< only the linear-in-t terms of the full model
};

std::string_view to_string(CoeffModel m);

/// Rejects imaginary residues above 1e-9 on B (ConsistencyError).
GaussianCoeffs coeffs_from_moments(const Propagator& prop, const NoiseMoments& noise);

/// B, C, D, Dbar assembled from U, V and the force moments of the reservoir.
GaussianCoeffs coeffs_general(ReservoirModel model, const ModelParams& p, double t,
                              double ep_tol = kDefaultEpTol);

/// SinkPeriodic requires the oscillatory regime; Asymptotic requires mu != 0.
GaussianCoeffs coeffs_closed_form(CoeffModel model, const ModelParams& p, double t,
                                  double ep_tol = kDefaultEpTol);

using Amplitudes = std::array<cplx, 2>;

/// alpha(t) = U alpha(0) + V conj(alpha(0)); identical for every reservoir.
Amplitudes mean_amplitudes(const ModelParams& p, const Amplitudes& alpha0, double t);

struct GaussianState {
  Amplitudes alpha{};
  GaussianCoeffs coeffs;
  double t = 0.0;
  CoeffModel model = CoeffModel::FullPhysical;
};

/// Coherent input: fluctuations are those of the vacuum, only the means move.
GaussianState evolve_coherent(CoeffModel model, const ModelParams& p, const Amplitudes& alpha0,
                              double t, double ep_tol = kDefaultEpTol);

}  // namespace ptsym
