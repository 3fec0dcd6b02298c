#include "ptsym/coeffs.hpp"

#include <cmath>
#include <string>

#include "ptsym/series.hpp"

namespace ptsym {

namespace {

constexpr double kImagResidueTol = 1e-9;

double checked_real(cplx z, const char* name) {
  if (std::abs(z.imag()) > kImagResidueTol * std::max(1.0, std::abs(z.real())))
    throw ConsistencyError(std::string(name) + " has an imaginary residue " +
                           std::to_string(z.imag()));
  return z.real();
}

}  // namespace

std::string_view to_string(CoeffModel m) {
  switch (m) {
    case CoeffModel::FullPhysical: return "full";
    case CoeffModel::SinkPeriodic: return "sink";
    case CoeffModel::Semiclassical: return "semiclassical";
    case CoeffModel::Asymptotic: return "asymptotic";
  }
  return "unknown";
}

GaussianCoeffs coeffs_from_moments(const Propagator& prop, const NoiseMoments& noise) {
  const Mat2c& U = prop.U;
  const Mat2c& V = prop.V;
  const Mat4c& F = noise.FF;
  GaussianCoeffs c;
  c.B1 = checked_real(V.row(0).squaredNorm() + F(1, 1), "B1");
  c.B2 = checked_real(V.row(1).squaredNorm() + F(3, 3), "B2");
  c.C1 = U(0, 0) * V(0, 0) + U(0, 1) * V(0, 1) + F(0, 1);
  c.C2 = U(1, 0) * V(1, 0) + U(1, 1) * V(1, 1) + F(2, 3);
  c.D = U(0, 0) * V(1, 0) + U(0, 1) * V(1, 1) + F(0, 3);
  c.Dbar = -(std::conj(V(0, 0)) * V(1, 0) + std::conj(V(0, 1)) * V(1, 1) + F(1, 3));
  return c;
}

GaussianCoeffs coeffs_general(ReservoirModel model, const ModelParams& p, double t,
                              double ep_tol) {
  p.validate();
  return coeffs_from_moments(propagator(p, t), noise_moments(model, p, t, ep_tol));
}

GaussianCoeffs coeffs_closed_form(CoeffModel model, const ModelParams& p, double t,
                                  double ep_tol) {
  p.validate();
  const double e = p.epsilon, k = p.kappa, g = p.gamma;
  const double m2 = p.mu_squared();
  const Regime regime = classify(p, ep_tol);
  GaussianCoeffs c;

  if (model == CoeffModel::Asymptotic) {
    if (regime == Regime::ExceptionalPoint)
      throw EPDegenerate("asymptotic coefficients diverge at the exceptional point");
    const double slope = e * g * t / m2;
    c.B1 = c.B2 = e * slope;
    c.C1 = c.C2 = -k * slope;
    c.Dbar = -kI * g * slope;
    return c;
  }

  const auto ker = series::time_kernels(std::sqrt(cplx(m2, 0.0)), t);
  const cplx S1 = ker.half_sin_2mu_t, Q = ker.sin_sq_over;

  if (model == CoeffModel::Semiclassical) {
    c.B1 = c.B2 = checked_real(k * k * Q, "B");
    c.C1 = c.C2 = -e * k * Q;
    c.D = -kI * k * S1 + kI * k * g * Q;
    return c;
  }

  // Full model; the sink model keeps only the bounded part of the secular
  // kernel (t - S1)/mu^2, i.e. -S1/mu^2.
  cplx W = ker.secular;
  if (model == CoeffModel::SinkPeriodic) {
    if (regime == Regime::ExceptionalPoint)
      throw EPDegenerate("sink model diverges at the exceptional point");
    if (regime == Regime::Exponential)
      throw RegimeError("sink model is defined only in the oscillatory regime");
    W = -S1 / m2;
  }
  c.B1 = checked_real(k * k * Q + e * e * g * W, "B1");
  c.B2 = checked_real((k * k + 2.0 * g * g) * Q + 2.0 * g * S1 + e * e * g * W, "B2");
  c.C1 = c.C2 = -e * k * Q - e * k * g * W;
  c.D = -kI * (k * S1 + k * g * Q);
  c.Dbar = -kI * (e * g * Q + e * g * g * W);
  return c;
}

Amplitudes mean_amplitudes(const ModelParams& p, const Amplitudes& alpha0, double t) {
  const auto prop = propagator(p, t);
  Amplitudes out;
  for (int j = 0; j < 2; ++j)
    out[j] = prop.U(j, 0) * alpha0[0] + prop.U(j, 1) * alpha0[1] +
             prop.V(j, 0) * std::conj(alpha0[0]) + prop.V(j, 1) * std::conj(alpha0[1]);
  return out;
}

GaussianState evolve_coherent(CoeffModel model, const ModelParams& p, const Amplitudes& alpha0,
                              double t, double ep_tol) {
  GaussianState s;
  s.alpha = mean_amplitudes(p, alpha0, t);
  s.coeffs = coeffs_closed_form(model, p, t, ep_tol);
  s.t = t;
  s.model = model;
  return s;
}

}  // namespace ptsym
