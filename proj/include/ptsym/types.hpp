#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace ptsym {

using cplx = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;
using Mat4r = Eigen::Matrix4d;

inline constexpr cplx kI{0.0, 1.0};

/// Parameters outside their admissible range (negative rate, zero epsilon, ...).
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested quantity only exists in a particular dynamical regime.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// mu (or xi) vanishes: the eigenbasis of the dynamical matrix collapses.
class EPDegenerate : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

class NonHermitianInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The partially transposed covariance has no real symplectic spectrum.
class ComplexSymplecticEigenvalue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A nominally real quantity picked up an imaginary part above tolerance.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ptsym
