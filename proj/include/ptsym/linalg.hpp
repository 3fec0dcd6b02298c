#pragma once

#include <array>

#include "ptsym/types.hpp"

namespace ptsym {

/// Eigenvalues of a 4x4 Hermitian matrix, ascending, by cyclic complex Jacobi
/// rotations. Only the upper triangle is trusted to be consistent with the
/// lower one; callers check Hermiticity themselves.
std::array<double, 4> hermitian_eigenvalues(const Mat4c& a, double tol = 1e-12);

/// max_ij |a_ij - conj(a_ji)|
double hermiticity_defect(const Mat4c& a);

double max_abs(const Mat4c& a);
double max_abs(const Mat2c& a);

}  // namespace ptsym
