#include <doctest.h>

#include <complex>

#include "statfield/operator_algebra.hpp"

using namespace statfield;
using Complex = std::complex<double>;

TEST_CASE("trace basics") {
    CHECK(OperatorValue::Identity(2, 2).trace() == Complex(2.0, 0.0));
    CHECK(OperatorValue::Zero(2, 2).trace() == Complex(0.0, 0.0));

    OperatorValue f2(2, 2);
    f2 << 0.5, 0.25, 0.25, 0.5;
    CHECK(f2.trace() == Complex(1.0, 0.0));

    // linearity
    OperatorValue a = OperatorValue::Random(3, 3), b = OperatorValue::Random(3, 3);
    CHECK(std::abs((2.0 * a + 3.0 * b).trace() - (2.0 * a.trace() + 3.0 * b.trace())) <= 1e-13);
}

TEST_CASE("psd_sqrt diagonal and identity") {
    OperatorValue d(2, 2);
    d << 4, 0, 0, 9;
    OperatorValue s = psd_sqrt(d);
    CHECK((s - (OperatorValue(2, 2) << 2, 0, 0, 3).finished()).norm() <= 1e-12);
    CHECK((psd_sqrt(OperatorValue::Identity(2, 2)) - OperatorValue::Identity(2, 2)).norm() <=
          1e-12);
}

TEST_CASE("psd_sqrt squares back") {
    OperatorValue f2(2, 2);
    f2 << 0.5, 0.25, 0.25, 0.5;
    const OperatorValue s = psd_sqrt(f2);
    CHECK((s * s.adjoint() - f2).norm() <= 1e-12);

    // a random PSD matrix
    OperatorValue r = OperatorValue::Random(4, 4);
    OperatorValue p = r * r.adjoint();
    const OperatorValue sp = psd_sqrt(p);
    CHECK((sp * sp.adjoint() - p).norm() <= 1e-10);
    CHECK(psd_check(sp).is_psd);
}

TEST_CASE("psd_sqrt rejects non-Hermitian input") {
    OperatorValue a(2, 2);
    a << 1, 1, 0, 1;
    CHECK_THROWS_AS(psd_sqrt(a), ValidationError);
}

TEST_CASE("psd_check") {
    auto r = psd_check(OperatorValue::Identity(2, 2));
    CHECK(r.is_psd);
    CHECK(r.min_eigenvalue == doctest::Approx(1.0));

    OperatorValue d(2, 2);
    d << 1, 0, 0, -1;
    r = psd_check(d);
    CHECK_FALSE(r.is_psd);
    CHECK(r.min_eigenvalue == doctest::Approx(-1.0));

    r = psd_check(0.5 * OperatorValue::Identity(2, 2));
    CHECK(r.is_psd);
    CHECK(r.min_eigenvalue == doctest::Approx(0.5));

    // A + A* is Hermitian, so the anti-Hermitian residual vanishes
    OperatorValue a = OperatorValue::Random(3, 3);
    CHECK(psd_check(a + a.adjoint()).anti_hermitian_norm <= 1e-14);
}

TEST_CASE("psd_project") {
    OperatorValue d(2, 2);
    d << 1, 0, 0, -1;
    const OperatorValue p = psd_project(d);
    CHECK(psd_check(p).min_eigenvalue >= -1e-14);
    CHECK((psd_project(p) - p).norm() <= 1e-14);  // idempotent
}
