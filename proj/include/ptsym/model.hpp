#pragma once

#include <string_view>

#include "ptsym/types.hpp"

namespace ptsym {

inline constexpr double kDefaultEpTol = 1e-9;

/// Rates of the coupled-mode system. epsilon: linear exchange, kappa:
/// parametric (pair) coupling, gamma: damping of mode 1 = gain of mode 2.
struct ModelParams {
  double epsilon = 1.0;
  double kappa = 0.0;
  double gamma = 0.0;

  /// Throws InvalidParams unless epsilon > 0, kappa >= 0, gamma >= 0, all finite.
  void validate() const;

  double mu_squared() const { return epsilon * epsilon - kappa * kappa - gamma * gamma; }
};

enum class Regime { Oscillatory, ExceptionalPoint, Exponential };

std::string_view to_string(Regime r);

struct DerivedScales {
  cplx xi;          ///< sqrt(eps^2 - kappa^2)
  cplx mu;          ///< sqrt(eps^2 - kappa^2 - gamma^2), principal branch
  cplx zeta_plus;   ///< sqrt(eps + xi)
  cplx zeta_minus;  ///< sqrt(eps - xi)
  cplx psi_plus;    ///< (mu + i gamma)/xi
  cplx psi_minus;   ///< (mu - i gamma)/xi
  double mu_squared;
  Regime regime;
};

/// Never throws for valid params; psi is infinite when xi = 0.
DerivedScales derive_scales(const ModelParams& p, double ep_tol = kDefaultEpTol);

Regime classify(const ModelParams& p, double ep_tol = kDefaultEpTol);

/// Heisenberg matrix for the operator vector (a1, a1+, a2, a2+):
///
///   [ -g    0   -ie  -ik ]
///   [  0   -g    ik   ie ]
///   [ -ie  -ik   g    0  ]
///   [  ik   ie   0    g  ]
///
/// Its spectrum is {-i mu, -i mu, +i mu, +i mu}.
Mat4c dynamical_matrix(const ModelParams& p);

/// M together with its analytic eigendecomposition M = T diag(lambda) T^-1.
struct DynamicalSystem {
  ModelParams params;
  DerivedScales scales;
  Mat4c M;
  Mat4c T;
  Mat4c T_inv;
  Vec4c eigenvalues;  ///< -i mu * (1, 1, -1, -1)
};

/// Throws EPDegenerate at the exceptional point (mu = 0) and where xi = 0,
/// in both cases the columns of T become parallel.
DynamicalSystem build_system(const ModelParams& p, double ep_tol = kDefaultEpTol);

}  // namespace ptsym
