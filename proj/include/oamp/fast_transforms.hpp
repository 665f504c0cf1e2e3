#pragma once

#include <Eigen/Core>

namespace oamp {

/// Orthonormal DCT-II of x (C * x with C^T C = I).
Eigen::VectorXd dct_forward(const Eigen::VectorXd& x);

/// Orthonormal inverse, C^T * x.
Eigen::VectorXd dct_inverse(const Eigen::VectorXd& x);

/// Orthonormal Walsh-Hadamard transform (Sylvester order, involutive).
/// Size must be a power of two.
Eigen::VectorXd fwht(const Eigen::VectorXd& x);

bool is_power_of_two(int n);

}  // namespace oamp
