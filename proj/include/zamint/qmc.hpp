#pragma once

// Quasi-Monte Carlo: Halton points with independent Cranley-Patterson
// rotations. The randomized shifts give an (uncalibrated but honest)
// error estimate: the sample standard deviation over shifts.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "zamint/params.hpp"
#include "zamint/rng.hpp"

namespace zamint {

inline constexpr int kQmcMaxDim = 16;
inline constexpr int kQmcShifts = 8;

namespace detail {

inline constexpr int kHaltonPrimes[kQmcMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19,
                                                  23, 29, 31, 37, 41, 43, 47, 53};

inline double radical_inverse(std::uint64_t n, int base) {
    double inv = 1.0 / base, invp = inv, x = 0.0;
    while (n) {
        x += double(n % static_cast<std::uint64_t>(base)) * invp;
        n /= static_cast<std::uint64_t>(base);
        invp *= inv;
    }
    return x;
}

}  // namespace detail

/// Inverse standard normal CDF (Wichura's AS 241, double precision).
inline double inverse_normal_cdf(double p) {
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -v : v;
}

/// Low-discrepancy estimate of E[f(U)] for U uniform on [0,1)^dim.
/// f is called with one cube point; the error comes from kQmcShifts
/// independent rotations.
template <class F>
Estimate qmc_expect(F&& f, int dim, const IntegrationConfig& cfg,
                    std::uint64_t stream_base = 0) {
    cfg.validate();
    if (dim < 1 || dim > kQmcMaxDim)
        throw std::invalid_argument("qmc_expect: dim must be in [1,16]");

    const std::int64_t per_shift = std::max<std::int64_t>(1, cfg.budget / kQmcShifts);
    std::vector<double> shift(static_cast<std::size_t>(dim));
    std::vector<double> x(static_cast<std::size_t>(dim));
    std::vector<Complex> means;
    means.reserve(kQmcShifts);

    for (int s = 0; s < kQmcShifts; ++s) {
        RngStream rng(cfg.seed, stream_base + static_cast<std::uint64_t>(s));
        for (double& v : shift) v = rng.next_double();
        Complex sum{};
        for (std::int64_t i = 0; i < per_shift; ++i) {
            for (int d = 0; d < dim; ++d) {
                double u = detail::radical_inverse(
                               static_cast<std::uint64_t>(i) + 1,
                               detail::kHaltonPrimes[d]) +
                           shift[static_cast<std::size_t>(d)];
                if (u >= 1.0) u -= 1.0;
                x[static_cast<std::size_t>(d)] = u;
            }
            const Complex v = f(std::span<const double>(x));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteSampleError("qmc_expect: integrand returned NaN/inf");
            sum += v;
        }
        means.push_back(sum / double(per_shift));
    }

    Complex mean{};
    for (const Complex& m : means) mean += m;
    mean /= double(kQmcShifts);
    double var = 0.0;
    for (const Complex& m : means) var += std::norm(m - mean);
    var /= double(kQmcShifts - 1);

    Estimate e;
    e.value = mean;
    e.error = std::sqrt(var / double(kQmcShifts));
    e.count = per_shift * kQmcShifts;
    e.method = Method::qmc;
    return e;
}

/// Map a unit-cube point to independent standard complex Gaussians,
/// two cube coordinates per output coordinate.
inline void cube_to_cgauss(std::span<const double> u, std::span<Complex> z) {
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double u1 = std::min(std::max(u[2 * i], 1e-17), 1.0 - 1e-17);
        const double u2 = u[2 * i + 1];
        const double a = inverse_normal_cdf(u1) * std::numbers::sqrt2 / 2.0;
        const double b =
            inverse_normal_cdf(std::min(std::max(u2, 1e-17), 1.0 - 1e-17)) *
            std::numbers::sqrt2 / 2.0;
        z[i] = Complex(a, b);
    }
}

}  // namespace zamint
