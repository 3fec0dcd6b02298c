#include "ptsym/witnesses.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ptsym/linalg.hpp"

namespace ptsym {

std::string format_flags(Flags f) {
  static constexpr const char* kNames[] = {"exceeds_gaussian_bound", "nonphysical",
                                           "nonphysical_covariance", "undefined_ratio",
                                           "regime_error", "divergent"};
  std::string out;
  for (int bit = 0; bit < 6; ++bit) {
    if (f & (1u << bit)) {
      if (!out.empty()) out += '|';
      out += kNames[bit];
    }
  }
  return out;
}

Mat4c depth_matrix(const GaussianCoeffs& c, double s) {
  const double shift = 0.5 * (1.0 - s);
  const cplx b1 = -(c.B1 + shift), b2 = -(c.B2 + shift);
  Mat4c K;
  // clang-format off
  K << b1,                c.C1,                std::conj(c.Dbar), c.D,
       std::conj(c.C1),   b1,                  std::conj(c.D),    c.Dbar,
       c.Dbar,            c.D,                 b2,                c.C2,
       std::conj(c.D),    std::conj(c.Dbar),   std::conj(c.C2),   b2;
  // clang-format on
  return K;
}

namespace {

Flags depth_flags(double tau) {
  Flags f = kFlagNone;
  if (tau > kGaussianDepthBound) f |= kExceedsGaussianBound;
  if (tau > kPhysicalDepthBound) f |= kNonphysical;
  return f;
}

double mode_depth(cplx C, double B) { return std::max(0.0, std::abs(C) - B); }

double global_depth(const GaussianCoeffs& c) {
  const Mat4c K = depth_matrix(c);
  if (!K.allFinite()) throw NonHermitianInput("depth matrix has non-finite entries");
  if (hermiticity_defect(K) > 1e-10 * std::max(1.0, max_abs(K)))
    throw NonHermitianInput("depth matrix is not Hermitian");
  return std::max(0.0, hermitian_eigenvalues(K).back());
}

}  // namespace

Depths nonclassicality_depth(const GaussianCoeffs& c) {
  Depths d;
  d.tau = global_depth(c);
  d.tau1 = mode_depth(c.C1, c.B1);
  d.tau2 = mode_depth(c.C2, c.B2);
  d.flags = depth_flags(d.tau);
  return d;
}

CovariancePT partial_transpose_covariance(const GaussianCoeffs& c) {
  Eigen::Matrix2d s1, s2, s12;
  s1 << 1 + 2 * c.B1 + 2 * c.C1.real(), 2 * c.C1.imag(),
        2 * c.C1.imag(), 1 + 2 * c.B1 - 2 * c.C1.real();
  s2 << 1 + 2 * c.B2 + 2 * c.C2.real(), -2 * c.C2.imag(),
        -2 * c.C2.imag(), 1 + 2 * c.B2 - 2 * c.C2.real();
  const cplx dm = c.D - c.Dbar, dp = c.D + c.Dbar;
  s12 << 2 * dm.real(), -2 * dm.imag(),
         2 * dp.imag(), 2 * dp.real();

  CovariancePT cov;
  cov.sigma << s1, s12, s12.transpose(), s2;
  cov.Delta = cov.sigma.determinant();
  cov.delta = s1.determinant() + s2.determinant() + 2 * s12.determinant();
  cov.nu_minus_symp = std::numeric_limits<double>::quiet_NaN();
  return cov;
}

Negativity negativity(const GaussianCoeffs& c) {
  Negativity n;
  n.cov = partial_transpose_covariance(c);
  const double Delta = n.cov.Delta, delta = n.cov.delta;
  double disc = 0.25 * delta * delta - Delta;
  if (disc < -1e-12 * std::max(1.0, 0.25 * delta * delta))
    throw ComplexSymplecticEigenvalue("symplectic eigenvalues of sigma^PT are complex");
  disc = std::max(disc, 0.0);
  if (!(delta > 0.0) || !(Delta > 0.0) || n.cov.sigma.llt().info() != Eigen::Success)
    throw ComplexSymplecticEigenvalue("sigma^PT is not positive definite");
  // nu_-^2 = Delta / nu_+^2 avoids the cancellation in delta/2 - sqrt(disc)
  const double nu_minus_sq = Delta / (0.5 * delta + std::sqrt(disc));
  n.cov.nu_minus_symp = std::sqrt(nu_minus_sq);
  n.EN = std::max(0.0, -0.5 * std::log(nu_minus_sq));
  return n;
}

WitnessReport evaluate_witnesses(const GaussianCoeffs& c) {
  const Depths d = nonclassicality_depth(c);
  WitnessReport w;
  w.tau = d.tau;
  w.tau1 = d.tau1;
  w.tau2 = d.tau2;
  w.flags = d.flags;
  try {
    w.EN = negativity(c).EN;
  } catch (const ComplexSymplecticEigenvalue&) {
    w.EN = std::numeric_limits<double>::infinity();
    w.flags |= kNonphysicalCovariance;
  }
  return w;
}

double period(const ModelParams& p, double ep_tol) {
  p.validate();
  switch (classify(p, ep_tol)) {
    case Regime::Oscillatory: break;
    case Regime::ExceptionalPoint:
      throw EPDegenerate("period is infinite at the exceptional point");
    case Regime::Exponential:
      throw RegimeError("no period in the exponential regime");
  }
  const double ratio = (p.kappa * p.kappa + p.gamma * p.gamma) / (p.epsilon * p.epsilon);
  return 2.0 * std::numbers::pi / std::sqrt(1.0 - ratio) / p.epsilon;
}

double select(const WitnessReport& w, Quantity q) {
  switch (q) {
    case Quantity::Tau: return w.tau;
    case Quantity::Tau1: return w.tau1;
    case Quantity::Tau2: return w.tau2;
    case Quantity::EN: return w.EN;
  }
  return 0.0;
}

namespace {

double quantity_at(const GaussianCoeffs& c, Quantity q) {
  switch (q) {
    case Quantity::Tau: return global_depth(c);
    case Quantity::Tau1: return mode_depth(c.C1, c.B1);
    case Quantity::Tau2: return mode_depth(c.C2, c.B2);
    case Quantity::EN:
      try {
        return negativity(c).EN;
      } catch (const ComplexSymplecticEigenvalue&) {
        return std::numeric_limits<double>::infinity();
      }
  }
  return 0.0;
}

template <class F>
Extremum refine(F&& f, double lo, double hi, double resolution, Extremum best) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > resolution) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 > best.value) best = {f1, x1, kFlagNone};
  if (f2 > best.value) best = {f2, x2, kFlagNone};
  return best;
}

struct Window {
  double t0, T, dt;
  int n;
  double at(int i) const { return t0 + i * dt; }
};

Window make_window(const ModelParams& p, double t0, const MaxSearch& s, double ep_tol) {
  if (s.samples < 3) throw InvalidParams("max search needs at least 3 samples");
  const double T = period(p, ep_tol);
  return {t0, T, T / (s.samples - 1), s.samples};
}

Extremum refine_around(CoeffModel model, const ModelParams& p, Quantity q, const Window& w,
                       int best_index, double value, const MaxSearch& s, double ep_tol) {
  Extremum best{value, w.at(best_index), kFlagNone};
  if (std::isfinite(value)) {
    const double lo = w.at(std::max(best_index - 1, 0));
    const double hi = w.at(std::min(best_index + 1, w.n - 1));
    auto f = [&](double t) { return quantity_at(coeffs_closed_form(model, p, t, ep_tol), q); };
    best = refine(f, lo, hi, s.rel_t_resolution * w.T, best);
  }
  best.flags = evaluate_witnesses(coeffs_closed_form(model, p, best.argmax_t, ep_tol)).flags;
  return best;
}

}  // namespace

Extremum max_over_period(CoeffModel model, const ModelParams& p, Quantity q, double window_start,
                         const MaxSearch& search, double ep_tol) {
  const Window w = make_window(p, window_start, search, ep_tol);
  int best_index = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < w.n; ++i) {
    const double v = quantity_at(coeffs_closed_form(model, p, w.at(i), ep_tol), q);
    if (v > best) {
      best = v;
      best_index = i;
    }
  }
  return refine_around(model, p, q, w, best_index, best, search, ep_tol);
}

std::array<Extremum, 4> max_over_period_all(CoeffModel model, const ModelParams& p,
                                            double window_start, const MaxSearch& search,
                                            double ep_tol) {
  const Window w = make_window(p, window_start, search, ep_tol);
  std::array<int, 4> idx{};
  std::array<double, 4> best;
  best.fill(-std::numeric_limits<double>::infinity());
  for (int i = 0; i < w.n; ++i) {
    const WitnessReport r = evaluate_witnesses(coeffs_closed_form(model, p, w.at(i), ep_tol));
    for (int q = 0; q < 4; ++q) {
      const double v = select(r, static_cast<Quantity>(q));
      if (v > best[q]) {
        best[q] = v;
        idx[q] = i;
      }
    }
  }
  std::array<Extremum, 4> out;
  for (int q = 0; q < 4; ++q)
    out[q] = refine_around(model, p, static_cast<Quantity>(q), w, idx[q], best[q], search, ep_tol);
  return out;
}

}  // namespace ptsym
