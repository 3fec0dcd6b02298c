#pragma once

#include "ptsym/types.hpp"

// Entire functions of a complex argument that stay accurate where the naive
// expressions cancel. All closed forms of the dynamics are written in terms
// of these, which makes them valid across the exceptional point.
namespace ptsym::series {

/// sin(z)/z
cplx sinc(cplx z);

/// (z - sin z)/z^3
cplx sin_deficit(cplx z);

/// (exp(z) - 1)/z
cplx expm1_ratio(cplx z);

/// Time kernels shared by the propagator, the noise moments and the
/// coefficient closed forms, for given mu and t. Each is even in mu.
struct TimeKernels {
  cplx cos_mu_t;        ///< cos(mu t)
  cplx sin_mu_t_over;   ///< sin(mu t)/mu
  cplx half_sin_2mu_t;  ///< sin(2 mu t)/(2 mu)
  cplx sin_sq_over;     ///< sin^2(mu t)/mu^2 = (1 - cos 2mu t)/(2 mu^2)
  cplx secular;         ///< (t - sin(2 mu t)/(2 mu))/mu^2
};

TimeKernels time_kernels(cplx mu, double t);

}  // namespace ptsym::series
