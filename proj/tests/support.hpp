#pragma once

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ptsym/coeffs.hpp"
#include "ptsym/dynamics.hpp"
#include "ptsym/linalg.hpp"
#include "ptsym/model.hpp"

namespace support {

using ptsym::cplx;
using ptsym::Mat4c;
using ptsym::ModelParams;

// Third-party reference: Eigen's Pade-based matrix exponential.
inline Mat4c eigen_expm(const Mat4c& M, double t) { return Mat4c(M * t).exp(); }

inline std::vector<cplx> eigenvalues(const Mat4c& M) {
  Eigen::ComplexEigenSolver<Mat4c> es(M, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + 4};
}

// largest distance after pairing each expected value with the nearest unused one
inline double spectrum_distance(std::vector<cplx> got, const std::vector<cplx>& expect) {
  double worst = 0.0;
  for (cplx e : expect) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](cplx a, cplx b) { return std::abs(a - e) < std::abs(b - e); });
    worst = std::max(worst, std::abs(*it - e));
    got.erase(it);
  }
  return worst;
}

inline double rel_dev(const Mat4c& a, const Mat4c& ref) {
  return ptsym::max_abs(Mat4c(a - ref)) / std::max(1.0, ptsym::max_abs(ref));
}

// sigma from the explicit second moments of the quadratures, independent of
// the closed form used by the library
inline Eigen::Matrix4d covariance_from_moments(const ptsym::GaussianCoeffs& c) {
  // symmetrised second moments <{x_i, x_j}>/2 for x = (a1, a1+, a2, a2+)
  const cplx B1 = c.B1, B2 = c.B2, a1dag_a2 = -c.Dbar;
  Mat4c N;
  N << c.C1, B1 + 0.5, c.D, std::conj(a1dag_a2),
       B1 + 0.5, std::conj(c.C1), a1dag_a2, std::conj(c.D),
       c.D, a1dag_a2, c.C2, B2 + 0.5,
       std::conj(a1dag_a2), std::conj(c.D), B2 + 0.5, std::conj(c.C2);
  // q = (a + a+), p = -i (a - a+); second mode with p -> -p (partial transpose)
  Eigen::Matrix<cplx, 4, 4> R = Eigen::Matrix<cplx, 4, 4>::Zero();
  R(0, 0) = 1.0; R(0, 1) = 1.0;
  R(1, 0) = -ptsym::kI; R(1, 1) = ptsym::kI;
  R(2, 2) = 1.0; R(2, 3) = 1.0;
  R(3, 2) = ptsym::kI; R(3, 3) = -ptsym::kI;
  const Mat4c S = R * N * R.transpose();
  return S.real();
}

struct Point {
  ModelParams p;
  double t;
};

inline std::vector<Point> random_points(std::uint64_t seed, int n, double rate_max, double t_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(0.0, rate_max), tt(0.0, t_max);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    Point pt;
    pt.p = {1.0, r(rng), r(rng)};
    pt.t = tt(rng);
    out.push_back(pt);
  }
  return out;
}

inline std::vector<ModelParams> oscillatory_params(std::uint64_t seed, int n, double margin = 0.02) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(0.0, 1.0);
  std::vector<ModelParams> out;
  while (static_cast<int>(out.size()) < n) {
    ModelParams p{1.0, r(rng), r(rng)};
    if (p.mu_squared() > margin) out.push_back(p);
  }
  return out;
}

}  // namespace support
