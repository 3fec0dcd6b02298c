#include "doctest.h"
#include "support.hpp"

#include "ptsym/series.hpp"

using namespace ptsym;

TEST_CASE("jacobi eigenvalues agree with Eigen on random Hermitian matrices") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 500; ++trial) {
    Mat4c a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = {g(rng), g(rng)};
    a = (a + a.adjoint()).eval();
    const auto ev = hermitian_eigenvalues(a);
    Eigen::SelfAdjointEigenSolver<Mat4c> es(a, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 4; ++i) CHECK(ev[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-12).scale(10));
  }
}

TEST_CASE("jacobi handles diagonal, degenerate and zero input") {
  Mat4c d = Mat4c::Zero();
  d.diagonal() << 3.0, -1.0, 2.0, -1.0;
  auto ev = hermitian_eigenvalues(d);
  CHECK(ev == std::array<double, 4>{-1.0, -1.0, 2.0, 3.0});

  ev = hermitian_eigenvalues(Mat4c::Zero());
  for (double x : ev) CHECK(x == 0.0);

  // doubly degenerate pair from a 2x2 block repeated with a unitary mix
  Mat4c b = Mat4c::Zero();
  b(0, 1) = b(2, 3) = cplx(0.0, 2.0);
  b(1, 0) = b(3, 2) = cplx(0.0, -2.0);
  ev = hermitian_eigenvalues(b);
  CHECK(ev[0] == doctest::Approx(-2.0));
  CHECK(ev[1] == doctest::Approx(-2.0));
  CHECK(ev[2] == doctest::Approx(2.0));
  CHECK(ev[3] == doctest::Approx(2.0));
}

TEST_CASE("hermiticity defect") {
  Mat4c a = Mat4c::Identity();
  CHECK(hermiticity_defect(a) == 0.0);
  a(0, 1) = cplx(0.0, 1e-3);
  CHECK(hermiticity_defect(a) == doctest::Approx(1e-3));
}

TEST_CASE("series helpers match their closed forms away from zero") {
  for (double x : {1e-9, 1e-4, 1e-3 * 0.99, 0.01, 0.3, 0.99, 1.5, 4.0}) {
    CHECK(series::sinc(cplx(x)).real() == doctest::Approx(std::sin(x) / x).epsilon(1e-14));
    if (x > 0.2)
      CHECK(series::sin_deficit(cplx(x)).real() ==
            doctest::Approx((x - std::sin(x)) / (x * x * x)).epsilon(1e-12));
    if (x > 1e-2)
      CHECK(series::expm1_ratio(cplx(x)).real() == doctest::Approx(std::expm1(x) / x).epsilon(1e-14));
  }
  CHECK(series::sin_deficit(cplx(0.0)).real() == doctest::Approx(1.0 / 6.0));
  CHECK(series::expm1_ratio(cplx(0.0)).real() == 1.0);
  // imaginary argument continues to the hyperbolic functions
  CHECK(series::sinc(cplx(0.0, 2.0)).real() == doctest::Approx(std::sinh(2.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("time kernels are even in mu and continuous through zero") {
  const double t = 3.7;
  const auto k0 = series::time_kernels(cplx(0.0), t);
  CHECK(k0.cos_mu_t.real() == 1.0);
  CHECK(k0.sin_mu_t_over.real() == doctest::Approx(t));
  CHECK(k0.half_sin_2mu_t.real() == doctest::Approx(t));
  CHECK(k0.sin_sq_over.real() == doctest::Approx(t * t));
  CHECK(k0.secular.real() == doctest::Approx(4.0 * t * t * t / 6.0));
  // first-order slopes in mu^2 are -2t^5/15 and -t^4/3, both below t^5
  for (double m : {1e-7, 1e-5, 1e-3}) {
    const double bound = 1.01 * m * m * std::pow(t, 5) + 1e-13;
    for (cplx mu : {cplx(m), cplx(0.0, m)}) {
      const auto k = series::time_kernels(mu, t);
      CHECK(std::abs(k.secular - k0.secular) < bound);
      CHECK(std::abs(k.sin_sq_over - k0.sin_sq_over) < bound);
      CHECK(std::abs(k.half_sin_2mu_t - k0.half_sin_2mu_t) < bound);
    }
  }
  const double mu = 0.8;
  const auto k = series::time_kernels(cplx(mu), t);
  CHECK(k.secular.real() ==
        doctest::Approx((t - std::sin(2 * mu * t) / (2 * mu)) / (mu * mu)).epsilon(1e-13));
  CHECK(k.sin_sq_over.real() ==
        doctest::Approx(std::pow(std::sin(mu * t) / mu, 2)).epsilon(1e-13));
}
