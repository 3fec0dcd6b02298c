#include "ptsym/dynamics.hpp"

#include <cmath>
#include <limits>

#include "ptsym/linalg.hpp"
#include "ptsym/series.hpp"

namespace ptsym {

std::string_view to_string(ReservoirModel m) {
  switch (m) {
    case ReservoirModel::FullPhysical: return "full";
    case ReservoirModel::Sink: return "sink";
    case ReservoirModel::Semiclassical: return "semiclassical";
  }
  return "unknown";
}

Mat4c Propagator::as_matrix() const {
  Mat4c P;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      P(2 * j, 2 * k) = U(j, k);
      P(2 * j, 2 * k + 1) = V(j, k);
      P(2 * j + 1, 2 * k) = std::conj(V(j, k));
      P(2 * j + 1, 2 * k + 1) = std::conj(U(j, k));
    }
  }
  return P;
}

Propagator propagator(const ModelParams& p, double t) {
  const auto s = derive_scales(p);
  const auto k = series::time_kernels(s.mu, t);
  const cplx c = k.cos_mu_t, sm = k.sin_mu_t_over;
  Propagator out;
  out.t = t;
  out.U << c - p.gamma * sm, -kI * p.epsilon * sm,
           -kI * p.epsilon * sm, c + p.gamma * sm;
  out.V << 0.0, -kI * p.kappa * sm,
           -kI * p.kappa * sm, 0.0;
  return out;
}

ReservoirSpec reservoir(ReservoirModel model, const ModelParams& p, double ep_tol) {
  ReservoirSpec r;
  r.model = model;
  switch (model) {
    case ReservoirModel::FullPhysical:
      r.L0(0, 0) = 2.0 * p.gamma;
      r.L0(3, 3) = 2.0 * p.gamma;
      break;
    case ReservoirModel::Sink:
      r.L0 = tailor_reservoir(p, ep_tol).sink;
      break;
    case ReservoirModel::Semiclassical:
      break;
  }
  return r;
}

NoiseMoments noise_moments_full(const ModelParams& p, double t) {
  const double e = p.epsilon, k = p.kappa, g = p.gamma;
  const auto s = derive_scales(p);
  const auto ker = series::time_kernels(s.mu, t);
  const cplx S1 = ker.half_sin_2mu_t, Q = ker.sin_sq_over, W = ker.secular;

  Mat2c Fa;
  Fa << -e, k, k, -e;
  Mat2c F1 = -g * e * W * Fa;
  F1(0, 0) += 2.0 * g * (S1 - g * Q);
  Mat2c F2 = -g * e * W * Fa;
  F2(1, 1) += 2.0 * g * (S1 + g * Q);
  Mat2c F12;
  F12 << -kI * e * g * g * W + kI * g * Q * e, -2.0 * kI * g * Q * k,
         0.0, kI * e * g * g * W + kI * g * Q * e;

  NoiseMoments n;
  n.t = t;
  n.FF << F1, F12, F12.adjoint(), F2;
  return n;
}

NoiseMoments ff_from_L0(const DynamicalSystem& sys, const Mat4c& L0, double t) {
  const Mat4c G = sys.T_inv * L0 * sys.T_inv.adjoint();
  Mat4c H;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const cplx rate = sys.eigenvalues(i) + std::conj(sys.eigenvalues(j));
      // int_0^t exp(rate s) ds, which is t where rate = 0 (secular terms)
      H(i, j) = G(i, j) * t * series::expm1_ratio(rate * t);
    }
  }
  NoiseMoments n;
  n.t = t;
  n.FF = sys.T * H * sys.T.adjoint();
  return n;
}

NoiseMoments noise_moments(ReservoirModel model, const ModelParams& p, double t, double ep_tol) {
  switch (model) {
    case ReservoirModel::FullPhysical:
      return noise_moments_full(p, t);
    case ReservoirModel::Sink: {
      const auto sys = build_system(p, ep_tol);
      return ff_from_L0(sys, tailor_reservoir(p, ep_tol).sink, t);
    }
    case ReservoirModel::Semiclassical:
      break;
  }
  NoiseMoments n;
  n.t = t;
  return n;
}

namespace {

void require_oscillatory(const ModelParams& p, double ep_tol, const char* what) {
  switch (classify(p, ep_tol)) {
    case Regime::Oscillatory: return;
    case Regime::ExceptionalPoint:
      throw EPDegenerate(std::string(what) + " diverges at the exceptional point");
    case Regime::Exponential:
      throw RegimeError(std::string(what) + " is defined only in the oscillatory regime");
  }
}

}  // namespace

TailoredReservoir tailor_reservoir(const ModelParams& p, double ep_tol) {
  p.validate();
  require_oscillatory(p, ep_tol, "tailored reservoir");
  const double e = p.epsilon, k = p.kappa, g = p.gamma, m2 = p.mu_squared();
  const cplx ig = kI * g;
  const double scale = e * g / m2;
  const double edge = 2.0 * m2 / e - e;

  TailoredReservoir r;
  // clang-format off
  r.secular << e,   -k,  -ig, 0.0,
               -k,   e,   0.0, ig,
               ig,   0.0, e,  -k,
               0.0, -ig, -k,   e;
  r.sink << edge, k,   ig,  0.0,
            k,   -e,   0.0, -ig,
            -ig,  0.0, -e,   k,
            0.0,  ig,   k,   edge;
  // clang-format on
  r.secular *= scale;
  r.sink *= scale;
  return r;
}

SinkDiagnostics sink_diagnostics(const ModelParams& p, double ep_tol) {
  p.validate();
  const double e = p.epsilon, g = p.gamma, m2 = p.mu_squared();
  const double rho = p.kappa * p.kappa + g * g;
  SinkDiagnostics d;
  if (g == 0.0) return d;

  const Regime regime = classify(p, ep_tol);
  if (regime == Regime::Exponential)
    throw RegimeError("sink strength is defined only for mu >= 0");
  const double root = std::sqrt(m2 * m2 + e * e * rho);
  // (root - rho)/mu^2 rewritten without the cancellation at mu -> 0
  d.nu_plus = g * e * e / (root + rho);
  if (regime == Regime::ExceptionalPoint) {
    d.nu_minus = -std::numeric_limits<double>::infinity();
    d.Lambda = d.nu_minus;
    d.Lambda_from_eigenvalues = d.nu_minus;
    d.divergent = true;
    return d;
  }
  d.nu_minus = g / m2 * (-rho - root);
  d.Lambda = 4.0 * g * (1.0 - e * e / m2);
  d.Lambda_from_eigenvalues = 2.0 * (d.nu_plus + d.nu_minus);
  return d;
}

double Commutators::defect() const {
  return std::max(max_abs(Mat2c(a_adag - Mat2c::Identity())), max_abs(a_a));
}

Commutators commutators(const Propagator& prop, const NoiseMoments& noise) {
  const Mat2c& U = prop.U;
  const Mat2c& V = prop.V;
  const Mat4c& F = noise.FF;
  Commutators c;
  c.a_adag = U * U.adjoint() - V * V.adjoint();
  c.a_a = U * V.transpose() - V * U.transpose();
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      c.a_adag(j, k) += F(2 * j, 2 * k) - F(2 * k + 1, 2 * j + 1);
      c.a_a(j, k) += F(2 * j, 2 * k + 1) - F(2 * k, 2 * j + 1);
    }
  }
  return c;
}

}  // namespace ptsym
