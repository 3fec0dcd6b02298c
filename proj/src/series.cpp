#include "ptsym/series.hpp"

#include <cmath>

namespace ptsym::series {

cplx sinc(cplx z) {
  if (std::abs(z) < 1e-3) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
  }
  return std::sin(z) / z;
}

cplx sin_deficit(cplx z) {
  // (z - sin z)/z^3 = sum_k (-1)^k z^(2k) / (2k+3)!
  if (std::abs(z) < 1.0) {
    const cplx z2 = z * z;
    cplx term = 1.0 / 6.0;
    cplx sum = term;
    for (int k = 1; k < 12; ++k) {
      term *= -z2 / double((2 * k + 2) * (2 * k + 3));
      sum += term;
    }
    return sum;
  }
  return (z - std::sin(z)) / (z * z * z);
}

cplx expm1_ratio(cplx z) {
  if (std::abs(z) < 1e-2) {
    cplx term = 1.0;
    cplx sum = term;
    for (int k = 2; k < 9; ++k) {
      term *= z / double(k);
      sum += term;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

TimeKernels time_kernels(cplx mu, double t) {
  const cplx x = mu * t;
  const cplx sx = t * sinc(x);
  TimeKernels k;
  k.cos_mu_t = std::cos(x);
  k.sin_mu_t_over = sx;
  k.half_sin_2mu_t = t * sinc(2.0 * x);
  k.sin_sq_over = sx * sx;
  k.secular = 4.0 * t * t * t * sin_deficit(2.0 * x);
  return k;
}

}  // namespace ptsym::series
