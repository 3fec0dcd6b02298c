#include "ptsym/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ptsym {

double hermiticity_defect(const Mat4c& a) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
  return d;
}

double max_abs(const Mat4c& a) { return a.cwiseAbs().maxCoeff(); }
double max_abs(const Mat2c& a) { return a.cwiseAbs().maxCoeff(); }

std::array<double, 4> hermitian_eigenvalues(const Mat4c& input, double tol) {
  Mat4c a = 0.5 * (input + input.adjoint());
  const double scale = std::max(max_abs(a), 1e-300);

  auto off_norm = [&a] {
    double s = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 64 && off_norm() > tol * 1e-3 * scale; ++sweep) {
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        // diag(1, conj(phase)) makes a_pq real and positive, then a real
        // Jacobi rotation annihilates it.
        const cplx phase = apq / r;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx d = std::conj(phase);
        // G = [[c, s], [-s d, c d]] acting on columns p, q
        const cplx g_pp = c, g_pq = s, g_qp = -s * d, g_qq = c * d;
        for (int k = 0; k < 4; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (int k = 0; k < 4; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::array<double, 4> ev{a(0, 0).real(), a(1, 1).real(), a(2, 2).real(), a(3, 3).real()};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace ptsym
