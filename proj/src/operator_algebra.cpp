#include "statfield/operator_algebra.hpp"

namespace statfield {

OperatorValue hermitian_part(const OperatorValue& A) { return 0.5 * (A + A.adjoint()); }

PsdCheckResult psd_check(const OperatorValue& A) {
    PsdCheckResult r;
    OperatorValue H = hermitian_part(A);
    r.anti_hermitian_norm = (A - H).norm();
    Eigen::SelfAdjointEigenSolver<OperatorValue> es(H, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.is_psd = r.min_eigenvalue >= -kPsdEigenTol;
    return r;
}

OperatorValue psd_sqrt(const OperatorValue& A) {
    const double scale = A.cwiseAbs().maxCoeff();
    if ((A - A.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * std::max(scale, 1.0))
        throw ValidationError("psd_sqrt requires a Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<OperatorValue> es(A);
    Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

OperatorValue psd_project(const OperatorValue& A) {
    Eigen::SelfAdjointEigenSolver<OperatorValue> es(hermitian_part(A));
    Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace statfield
