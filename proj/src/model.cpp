#include "ptsym/model.hpp"

#include <cmath>
#include <string>

namespace ptsym {

void ModelParams::validate() const {
  if (!std::isfinite(epsilon) || !std::isfinite(kappa) || !std::isfinite(gamma))
    throw InvalidParams("model parameters must be finite");
  if (!(epsilon > 0.0)) throw InvalidParams("epsilon must be > 0");
  if (kappa < 0.0) throw InvalidParams("kappa must be >= 0");
  if (gamma < 0.0) throw InvalidParams("gamma must be >= 0");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Oscillatory: return "oscillatory";
    case Regime::ExceptionalPoint: return "exceptional_point";
    case Regime::Exponential: return "exponential";
  }
  return "unknown";
}

Regime classify(const ModelParams& p, double ep_tol) {
  const double m2 = p.mu_squared();
  const double band = ep_tol * p.epsilon * p.epsilon;
  if (std::abs(m2) <= band) return Regime::ExceptionalPoint;
  return m2 > 0.0 ? Regime::Oscillatory : Regime::Exponential;
}

DerivedScales derive_scales(const ModelParams& p, double ep_tol) {
  const double e = p.epsilon, k = p.kappa, g = p.gamma;
  DerivedScales d;
  d.mu_squared = p.mu_squared();
  d.xi = std::sqrt(cplx(e * e - k * k, 0.0));
  d.mu = std::sqrt(cplx(d.mu_squared, 0.0));
  d.zeta_plus = std::sqrt(e + d.xi);
  d.zeta_minus = std::sqrt(e - d.xi);
  d.psi_plus = (d.mu + kI * g) / d.xi;
  d.psi_minus = (d.mu - kI * g) / d.xi;
  d.regime = classify(p, ep_tol);
  return d;
}

Mat4c dynamical_matrix(const ModelParams& p) {
  const cplx g = p.gamma, ie = kI * p.epsilon, ik = kI * p.kappa;
  Mat4c M;
  // clang-format off
  M << -g,   0.0, -ie, -ik,
       0.0, -g,    ik,  ie,
       -ie, -ik,   g,   0.0,
        ik,  ie,   0.0, g;
  // clang-format on
  return M;
}

DynamicalSystem build_system(const ModelParams& p, double ep_tol) {
  p.validate();
  DynamicalSystem sys;
  sys.params = p;
  sys.scales = derive_scales(p, ep_tol);
  sys.M = dynamical_matrix(p);
  const auto& s = sys.scales;
  if (s.regime == Regime::ExceptionalPoint)
    throw EPDegenerate("eigenbasis of M degenerates at the exceptional point (mu = 0)");
  if (std::norm(s.xi) <= ep_tol * p.epsilon * p.epsilon)
    throw EPDegenerate("eigenbasis parametrisation degenerates at kappa = epsilon (xi = 0)");

  const cplx zp = s.zeta_plus, zm = s.zeta_minus, pp = s.psi_plus, pm = s.psi_minus;
  const double f = 1.0 / (2.0 * std::sqrt(p.epsilon));
  // Columns 1,2 belong to -i mu, columns 3,4 to +i mu.
  sys.T.col(0) << zp, -zm, zp * pp, -zm * pp;
  sys.T.col(1) << zm, -zp, -zm * pp, zp * pp;
  sys.T.col(2) << zp, -zm, -zp * pm, zm * pm;
  sys.T.col(3) << zm, -zp, zm * pm, -zp * pm;
  sys.T *= f;

  const cplx h = std::sqrt(p.epsilon) / (2.0 * s.mu);
  sys.T_inv.col(0) << zp * pm, -zm * pm, zp * pp, -zm * pp;
  sys.T_inv.col(1) << zm * pm, -zp * pm, zm * pp, -zp * pp;
  sys.T_inv.col(2) << zp, zm, -zp, -zm;
  sys.T_inv.col(3) << zm, zp, -zm, -zp;
  sys.T_inv *= h;

  const cplx lam = -kI * s.mu;
  sys.eigenvalues << lam, lam, -lam, -lam;
  return sys;
}

}  // namespace ptsym
