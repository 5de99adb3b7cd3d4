#pragma once

// Test-only reference implementations, deliberately independent of the
// library's algorithms: a Lanczos rational-approximation log-gamma (the
// library uses a shifted Stirling series) and an adaptive Simpson rule
// (the library uses double-exponential quadrature).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracles {

using Complex = std::complex<double>;

// Lanczos approximation, g = 607/128, 15 terms. Max relative error in
// double is around 1e-13 on the right half-plane.
inline Complex log_gamma_lanczos(Complex z) {
    static constexpr double g = 607.0 / 128.0;
    static constexpr double c[15] = {
        0.99999999999999709182,     57.156235665862923517,
        -59.597960355475491248,     14.136097974741747174,
        -0.49191381609762019978,    0.33994649984811888699e-4,
        0.46523628927048575665e-4,  -0.98374475304879564677e-4,
        0.15808870322491248884e-3,  -0.21026444172410488319e-3,
        0.21743961811521264320e-3,  -0.16431810653676389022e-3,
        0.84418223983852743293e-4,  -0.26190838401581408670e-4,
        0.36899182659531622704e-5,
    };
    if (z.real() < 0.5) {
        const double pi = std::numbers::pi;
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_lanczos(1.0 - z);
    }
    Complex sum = c[0];
    for (int k = 1; k < 15; ++k) sum += c[k] / (z - 1.0 + double(k));
    const Complex base = z + g - 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z - 0.5) * std::log(base) -
           base + std::log(sum);
}

inline Complex gamma_lanczos(Complex z) { return std::exp(log_gamma_lanczos(z)); }

// Plain recursive adaptive Simpson on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-12, int depth = 28) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    std::function<double(double, double, double, double, double, double, int)>
        rec = [&](double x0, double x2, double f0, double f1, double f2,
                  double whole, int d) -> double {
        const double xm = 0.5 * (x0 + x2);
        const double x1l = 0.5 * (x0 + xm);
        const double x1r = 0.5 * (xm + x2);
        const double fl = f(x1l), fr = f(x1r);
        const double left = (xm - x0) / 6.0 * (f0 + 4.0 * fl + f1);
        const double right = (x2 - xm) / 6.0 * (f1 + 4.0 * fr + f2);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(x0, xm, f0, fl, f1, left, d - 1) +
               rec(xm, x2, f1, fr, f2, right, d - 1);
    };
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, depth);
}

}  // namespace oracles
