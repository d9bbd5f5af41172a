#pragma once

#include <Eigen/Dense>

#include "statfield/errors.hpp"

namespace statfield {

/// Finite-dimensional stand-in for a trace-class operator on H.
using OperatorValue = Eigen::MatrixXcd;

struct PsdCheckResult {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
    double anti_hermitian_norm = 0.0;
};

/// Tolerances shared by the PSD utilities.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdEigenTol = 1e-10;

/// Hermitian part (A + A*)/2.
OperatorValue hermitian_part(const OperatorValue& A);

/// Reports the smallest eigenvalue of the Hermitian part and the Frobenius
/// norm of the anti-Hermitian residual.
PsdCheckResult psd_check(const OperatorValue& A);

/// Principal square root via eigendecomposition; eigenvalues below zero are
/// clipped. Throws on inputs that are not Hermitian within kHermitianTol
/// (relative to the max-norm).
OperatorValue psd_sqrt(const OperatorValue& A);

/// Projection onto the PSD cone: Hermitian part, negative eigenvalues clipped.
OperatorValue psd_project(const OperatorValue& A);

}  // namespace statfield
