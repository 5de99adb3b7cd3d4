#pragma once

// Closed-form right-hand sides of the verified identities, all assembled
// in log space so Gamma ratios never overflow before the final exp.

#include <complex>
#include <span>

#include "zamint/log_gamma.hpp"
#include "zamint/params.hpp"

namespace zamint {

/// pi^3 Gamma(nu1+nu2+nu3-1) Gamma(nu1) Gamma(nu2) Gamma(nu3)
///   / (Gamma(2 sigma1) Gamma(2 sigma2) Gamma(2 sigma3)).
inline Complex triple_integral_rhs(const ParameterPoint& p) {
    Complex lg = 3.0 * std::log(std::numbers::pi);
    lg += log_gamma(p.nu[0] + p.nu[1] + p.nu[2] - 1.0);
    for (int i = 0; i < 3; ++i) lg += log_gamma(p.nu[i]);
    for (int i = 0; i < 3; ++i) lg -= log_gamma(2.0 * p.sigma[i]);
    return ClosedFormValue::from_log(lg).value;
}

/// Gamma(nu1+nu2+nu3-1) Gamma(nu1) Gamma(nu2) Gamma(nu3).
inline Complex gaussian_moment_rhs(const ComplexTriple& nu) {
    Complex lg = log_gamma(nu[0] + nu[1] + nu[2] - 1.0);
    for (int i = 0; i < 3; ++i) lg += log_gamma(nu[i]);
    return ClosedFormValue::from_log(lg).value;
}

/// Moment of the radius on C^n: Gamma(s/2 + n) / Gamma(n).
inline Complex radial_moment_rhs(Complex s, int n) {
    if (n < 1) throw DomainError("radial_moment_rhs: need n >= 1");
    return ClosedFormValue::from_log(log_gamma(0.5 * s + double(n)) -
                                     log_gamma(double(n)))
        .value;
}

/// Moment of a linear form with coefficients c: Gamma(s/2 + 1) ||c||^s.
inline Complex linear_moment_rhs(Complex s, std::span<const Complex> c) {
    double norm2 = 0.0;
    for (const Complex& ci : c) norm2 += std::norm(ci);
    return ClosedFormValue::from_log(log_gamma(0.5 * s + 1.0) +
                                     0.5 * s * std::log(norm2))
        .value;
}

/// Moment of the 2x2 spinor determinant: Gamma(s/2 + 1) Gamma(s/2 + 2).
inline Complex det_moment_rhs(Complex s) {
    return ClosedFormValue::from_log(log_gamma(0.5 * s + 1.0) +
                                     log_gamma(0.5 * s + 2.0))
        .value;
}

}  // namespace zamint
