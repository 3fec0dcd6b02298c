#include "doctest.h"
#include "support.hpp"

#include <numbers>

#include "ptsym/oracle.hpp"
#include "ptsym/witnesses.hpp"

using namespace ptsym;

namespace {

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

TEST_CASE("vacuum witnesses") {
  const GaussianCoeffs zero;
  const auto d = nonclassicality_depth(zero);
  CHECK(d.tau == 0.0);
  CHECK(d.tau1 == 0.0);
  CHECK(d.tau2 == 0.0);
  CHECK(d.flags == kFlagNone);
  const auto n = negativity(zero);
  CHECK(n.EN == 0.0);
  CHECK(n.cov.nu_minus_symp == doctest::Approx(1.0));
  CHECK(max_abs(Mat4c(n.cov.sigma.cast<cplx>() - Mat4c::Identity())) == 0.0);
}

TEST_CASE("lossless squeezer") {
  const ModelParams p{1.0, 0.5, 0.0};
  const double mu = std::sqrt(p.mu_squared());
  const auto c = coeffs_closed_form(CoeffModel::Semiclassical, p, std::numbers::pi / (2 * mu));
  const auto d = nonclassicality_depth(c);
  CHECK(d.tau1 == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(d.tau >= d.tau1 - 1e-12);
  // D ~ sin(2 mu t) vanishes here: two uncorrelated squeezed modes
  CHECK(std::abs(c.D) < 1e-15);
  CHECK(negativity(c).EN == 0.0);

  const auto q = coeffs_closed_form(CoeffModel::Semiclassical, p, std::numbers::pi / (4 * mu));
  const auto n = negativity(q);
  const auto nu = oracle::symplectic_spectrum(n.cov.sigma);
  CHECK(nu[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(n.EN == doctest::Approx(-std::log(nu[0])).epsilon(1e-12));
  CHECK(n.EN == doctest::Approx(0.54930614433405).epsilon(1e-12));
}

TEST_CASE("asymptotic states are classical and separable") {
  for (const auto& p : support::oscillatory_params(41, 50)) {
    if (p.gamma == 0.0) continue;
    for (double t : {10.0, 1e3}) {
      const auto c = coeffs_closed_form(CoeffModel::Asymptotic, p, t);
      const auto d = nonclassicality_depth(c);
      CHECK(d.tau == 0.0);
      CHECK(d.tau1 == 0.0);
      CHECK(d.tau2 == 0.0);
      CHECK(negativity(c).EN == 0.0);
      // doubly degenerate top eigenvalue -B + sqrt(|C|^2 + |Dbar|^2)
      const auto ev = hermitian_eigenvalues(depth_matrix(c));
      const double top = -c.B1 + std::sqrt(std::norm(c.C1) + std::norm(c.Dbar));
      CHECK(ev[3] == doctest::Approx(top).epsilon(1e-10).scale(c.B1));
      CHECK(ev[2] == doctest::Approx(top).epsilon(1e-10).scale(c.B1));
      CHECK(top <= 0.0);
    }
  }
}

TEST_CASE("depth matrix is Hermitian, top eigenvalue equals the s-scan threshold") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_coeffs(rng);
    const Mat4c K = depth_matrix(c);
    CHECK(hermiticity_defect(K) == 0.0);
    const auto d = nonclassicality_depth(c);
    CHECK(d.tau >= std::max(d.tau1, d.tau2) - 1e-12);
    CHECK(std::abs(d.tau - oracle::s_scan_depth(c)) < 1e-7);
    Eigen::SelfAdjointEigenSolver<Mat4c> es(K, Eigen::EigenvaluesOnly);
    CHECK(d.tau == doctest::Approx(std::max(0.0, es.eigenvalues()(3))).epsilon(1e-12).scale(1.0));
    // extra thermal noise never increases any depth
    GaussianCoeffs noisy = c;
    noisy.B1 += 0.2;
    noisy.B2 += 0.2;
    const auto dn = nonclassicality_depth(noisy);
    CHECK(dn.tau <= d.tau);
    CHECK(dn.tau1 <= d.tau1);
    CHECK(dn.tau2 <= d.tau2);
    // s-ordering shifts the spectrum rigidly
    const auto ks = hermitian_eigenvalues(depth_matrix(c, -0.5));
    CHECK(ks[3] == doctest::Approx(hermitian_eigenvalues(K)[3] - 0.75));
  }
}

TEST_CASE("per-mode depth example") {
  GaussianCoeffs c;
  c.B1 = c.B2 = 0.1;
  c.C1 = c.C2 = 0.3;
  const auto d = nonclassicality_depth(c);
  CHECK(d.tau1 == doctest::Approx(0.2));
  CHECK(d.tau == doctest::Approx(0.2));
  CHECK(oracle::s_scan_depth(c) == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("depth flags") {
  GaussianCoeffs c;
  c.C1 = 0.7;
  CHECK(nonclassicality_depth(c).flags == kExceedsGaussianBound);
  c.C1 = 1.2;
  CHECK(nonclassicality_depth(c).flags == (kExceedsGaussianBound | kNonphysical));
  c.B1 = NAN;
  CHECK_THROWS_AS(nonclassicality_depth(c), NonHermitianInput);
  CHECK(format_flags(kExceedsGaussianBound | kNonphysical) == "exceeds_gaussian_bound|nonphysical");
  CHECK(format_flags(kFlagNone).empty());
  CHECK(format_flags(kUndefinedRatio | kDivergent) == "undefined_ratio|divergent");
}

TEST_CASE("covariance agrees with quadrature moments built independently") {
  for (const auto& pt : support::random_points(43, 100, 1.0, 6.0)) {
    for (auto m : {CoeffModel::FullPhysical, CoeffModel::Semiclassical}) {
      const auto c = coeffs_closed_form(m, pt.p, pt.t);
      const auto cov = partial_transpose_covariance(c);
      const Eigen::Matrix4d ref = support::covariance_from_moments(c);
      const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
      CHECK((cov.sigma - cov.sigma.transpose()).cwiseAbs().maxCoeff() < 1e-12 * scale);
      CHECK((cov.sigma - ref).cwiseAbs().maxCoeff() < 1e-12 * scale);
    }
  }
}

TEST_CASE("negativity matches the direct symplectic spectrum") {
  for (const auto& pt : support::random_points(44, 200, 1.0, 6.0)) {
    const auto c = coeffs_closed_form(CoeffModel::FullPhysical, pt.p, pt.t);
    const auto n = negativity(c);
    const auto nu = oracle::symplectic_spectrum(n.cov.sigma);
    CHECK(n.cov.nu_minus_symp == doctest::Approx(nu[0]).epsilon(1e-8).scale(nu[1]));
    CHECK(n.cov.Delta == doctest::Approx(nu[0] * nu[0] * nu[1] * nu[1]).epsilon(1e-8).scale(n.cov.Delta));
    CHECK(n.EN == doctest::Approx(std::max(0.0, -std::log(nu[0]))).epsilon(1e-8).scale(1.0));
    CHECK(nu[1] >= 1.0 - 1e-9);
  }
}

TEST_CASE("nonphysical covariance is flagged as divergent negativity") {
  GaussianCoeffs c;
  c.B1 = -0.6;
  CHECK_THROWS_AS(negativity(c), ComplexSymplecticEigenvalue);
  const auto w = evaluate_witnesses(c);
  CHECK(std::isinf(w.EN));
  CHECK((w.flags & kNonphysicalCovariance) != 0);
  CHECK((w.flags & kNonphysical) == 0);
}

TEST_CASE("period") {
  CHECK(period({1.0, 0.0, 0.0}) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
  CHECK(period({1.0, 0.5, 0.5}) == doctest::Approx(2 * std::numbers::pi / std::sqrt(0.5)).epsilon(1e-15));
  CHECK(period({1.0, 0.5, 0.5}) == doctest::Approx(8.8858).epsilon(1e-4));
  CHECK(period({2.0, 1.0, 1.0}) == doctest::Approx(period({1.0, 0.5, 0.5}) / 2).epsilon(1e-15));
  CHECK_THROWS_AS(period({1.0, 0.6, 0.8}), EPDegenerate);
  CHECK_THROWS_AS(period({1.0, 0.9, 0.8}), RegimeError);
}

TEST_CASE("maximum over a period") {
  const ModelParams lossless{1.0, 0.5, 0.0};
  const double mu = std::sqrt(lossless.mu_squared());
  auto e = max_over_period(CoeffModel::Semiclassical, lossless, Quantity::Tau1);
  CHECK(e.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const double T = period(lossless);
  const double peak = std::numbers::pi / (2 * mu);
  CHECK(std::min(std::abs(e.argmax_t - peak), std::abs(e.argmax_t - peak - T / 2)) < 1e-4 * T);

  for (auto m : {CoeffModel::FullPhysical, CoeffModel::Semiclassical})
    CHECK(max_over_period(m, {1.0, 0.0, 0.4}, Quantity::Tau1).value == 0.0);
  // the sink drives B1 negative even without squeezing
  const auto sink0 = max_over_period(CoeffModel::SinkPeriodic, {1.0, 0.0, 0.4}, Quantity::Tau1);
  CHECK(sink0.value > 0.0);
  CHECK(coeffs_closed_form(CoeffModel::SinkPeriodic, {1.0, 0.0, 0.4}, sink0.argmax_t).B1 == doctest::Approx(-sink0.value));

  const ModelParams p{1.0, 0.5, 0.3};
  const double full = max_over_period(CoeffModel::FullPhysical, p, Quantity::EN).value;
  const double sink = max_over_period(CoeffModel::SinkPeriodic, p, Quantity::EN).value;
  CHECK(full > 0.0);
  CHECK(full <= sink);

  const auto all = max_over_period_all(CoeffModel::Semiclassical, p);
  for (int q = 0; q < 4; ++q) {
    const auto single = max_over_period(CoeffModel::Semiclassical, p, static_cast<Quantity>(q));
    CHECK(all[q].value == doctest::Approx(single.value).epsilon(1e-12));
  }
  // refinement never loses against the raw sampling
  MaxSearch coarse;
  coarse.samples = 16;
  for (int q = 0; q < 4; ++q) {
    const auto a = max_over_period(CoeffModel::Semiclassical, p, static_cast<Quantity>(q), 0.0, coarse);
    CHECK(a.value <= all[q].value + 1e-9);
  }
  CHECK_THROWS_AS(max_over_period(CoeffModel::Semiclassical, {1.0, 0.9, 0.8}, Quantity::Tau), RegimeError);
}
