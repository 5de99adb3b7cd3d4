#pragma once

// The Gaussian side: normalized complex Gaussian expectations, the spinor
// determinant kernel, and the verifiers for the closed-form moment
// identities (radial / linear / determinant) and the six-coordinate
// kernel moment.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "zamint/closed_forms.hpp"
#include "zamint/monte_carlo.hpp"
#include "zamint/params.hpp"
#include "zamint/qmc.hpp"
#include "zamint/report.hpp"
#include "zamint/rng.hpp"

namespace zamint {

struct Spinor {
    Complex a{}, b{};
};

using SpinorTriple = std::array<Spinor, 3>;

/// 2x2 determinant of two spinors; bilinear and antisymmetric.
inline Complex spinor_det(const Spinor& w1, const Spinor& w2) {
    return w1.a * w2.b - w2.a * w1.b;
}

/// One draw of the standard complex Gaussian (density e^{-|z|^2}/pi).
inline Complex sample_cgauss(RngStream& rng) { return rng.next_cgauss(); }

inline constexpr double kCoincidenceCutoff = 1e-300;

/// K_nu(w) = |d(w1,w2)|^{2 nu3 - 2} |d(w1,w3)|^{2 nu2 - 2} |d(w2,w3)|^{2 nu1 - 2},
/// evaluated in log space. Complex nu is supported.
inline Complex kernel_K(const ComplexTriple& nu, const SpinorTriple& w) {
    const double d12 = std::abs(spinor_det(w[0], w[1]));
    const double d13 = std::abs(spinor_det(w[0], w[2]));
    const double d23 = std::abs(spinor_det(w[1], w[2]));
    const Complex e12 = 2.0 * nu[2] - 2.0;
    const Complex e13 = 2.0 * nu[1] - 2.0;
    const Complex e23 = 2.0 * nu[0] - 2.0;

    Complex lk{};
    bool vanishes = false;
    auto accum = [&](double d, const Complex& e) {
        if (e == Complex{}) return;  // |d|^0 == 1, even in the limit
        if (d < kCoincidenceCutoff) {
            if (e.real() <= 0.0)
                throw CoincidenceError(
                    "kernel_K: coinciding spinors with non-positive exponent");
            vanishes = true;
            return;
        }
        lk += e * std::log(d);
    };
    accum(d12, e12);
    accum(d13, e13);
    accum(d23, e23);
    if (vanishes) return Complex{};
    return std::exp(lk);
}

inline constexpr int kGexpectMaxCoords = 8;

/// Normalized Gaussian expectation E[f(z_1..z_n)] with z_i independent
/// standard complex Gaussians; gexpect(1) == 1 by construction.
template <class F>
Estimate gexpect(F&& f, int n, const IntegrationConfig& cfg,
                 std::uint64_t stream_base = 0) {
    if (n < 1 || n > kGexpectMaxCoords)
        throw std::invalid_argument("gexpect: n out of range");
    auto sampler = [n](RngStream& rng) {
        std::array<Complex, kGexpectMaxCoords> z{};
        for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = rng.next_cgauss();
        return z;
    };
    auto g = [&f, n](const std::array<Complex, kGexpectMaxCoords>& z) {
        return f(std::span<const Complex>(z.data(), static_cast<std::size_t>(n)));
    };
    return mc_expect(g, sampler, cfg, stream_base);
}

inline SpinorTriple spinors_from_coords(std::span<const Complex> z) {
    return {Spinor{z[0], z[1]}, Spinor{z[2], z[3]}, Spinor{z[4], z[5]}};
}

// ---------------------------------------------------------------------------
// Verifiers.

enum class Prop1Case { radial, linear, det };

struct Prop1Params {
    Complex s{};
    int n = 1;                // radial only
    std::vector<Complex> c;   // linear only
};

inline const char* prop1_case_name(Prop1Case c) {
    switch (c) {
        case Prop1Case::radial: return "radial";
        case Prop1Case::linear: return "linear";
        case Prop1Case::det: return "det";
    }
    return "?";
}

/// Monte Carlo check of one of the three closed-form Gaussian moments.
inline Report verify_prop1(Prop1Case cs, const Prop1Params& pp,
                           const IntegrationConfig& cfg,
                           double sigmas_threshold = 3.0,
                           std::uint64_t stream_base = 0) {
    Report rep;
    rep.check = std::string("prop1-") + prop1_case_name(cs);
    rep.seed = cfg.seed;
    rep.params.emplace_back("s", format_complex(pp.s));

    switch (cs) {
        case Prop1Case::radial: {
            if (!(pp.s.real() > -double(pp.n)))
                throw DomainError("verify_prop1: radial case needs Re s > -n");
            rep.params.emplace_back("n", std::to_string(pp.n));
            const Complex s = pp.s;
            rep.lhs = gexpect(
                [s](std::span<const Complex> z) {
                    double r2 = 0.0;
                    for (const Complex& zi : z) r2 += std::norm(zi);
                    return std::exp(0.5 * s * std::log(r2));
                },
                pp.n, cfg, stream_base);
            rep.rhs = radial_moment_rhs(pp.s, pp.n);
            break;
        }
        case Prop1Case::linear: {
            if (!(pp.s.real() > -1.0))
                throw DomainError("verify_prop1: linear case needs Re s > -1");
            if (pp.c.empty())
                throw std::invalid_argument("verify_prop1: linear case needs c");
            std::string cs_str;
            for (const Complex& ci : pp.c) {
                if (!cs_str.empty()) cs_str += ',';
                cs_str += format_complex(ci);
            }
            rep.params.emplace_back("c", cs_str);
            const std::vector<Complex> c = pp.c;
            const Complex s = pp.s;
            rep.lhs = gexpect(
                [&c, s](std::span<const Complex> z) {
                    Complex h{};
                    for (std::size_t i = 0; i < c.size(); ++i) h += c[i] * z[i];
                    const double m = std::abs(h);
                    if (m == 0.0) return Complex{};
                    return std::exp(s * std::log(m));
                },
                static_cast<int>(pp.c.size()), cfg, stream_base);
            rep.rhs = linear_moment_rhs(pp.s, pp.c);
            break;
        }
        case Prop1Case::det: {
            if (!(pp.s.real() > -0.5))
                throw DomainError("verify_prop1: det case needs Re s > -1/2");
            const Complex s = pp.s;
            rep.lhs = gexpect(
                [s](std::span<const Complex> z) {
                    const double m = std::abs(z[0] * z[3] - z[1] * z[2]);
                    if (m == 0.0) return Complex{};
                    return std::exp(s * std::log(m));
                },
                4, cfg, stream_base);
            rep.rhs = det_moment_rhs(pp.s);
            break;
        }
    }
    rep.score(cfg.tolerance, sigmas_threshold);
    return rep;
}

/// Checks gexpect(K_nu) over (C^2)^3 against the Gamma product. Plain MC
/// needs Re nu_i > 1/2 for finite variance; below that the randomized-QMC
/// fallback is used and the error estimate is not calibrated.
inline Report verify_thm2(const ComplexTriple& nu, const IntegrationConfig& cfg,
                          double sigmas_threshold = 3.0,
                          std::uint64_t stream_base = 0) {
    for (const Complex& ni : nu)
        if (!(ni.real() > 0.0))
            throw DomainError("verify_thm2: needs Re nu_i > 0");
    double min_re = nu[0].real();
    for (const Complex& ni : nu) min_re = std::min(min_re, ni.real());

    Report rep;
    rep.check = "thm2";
    rep.seed = cfg.seed;
    rep.params.emplace_back("nu", format_complex(nu[0]) + "," +
                                      format_complex(nu[1]) + "," +
                                      format_complex(nu[2]));
    if (min_re > 0.5) {
        rep.lhs = gexpect(
            [&nu](std::span<const Complex> z) {
                return kernel_K(nu, spinors_from_coords(z));
            },
            6, cfg, stream_base);
    } else {
        rep.lhs = qmc_expect(
            [&nu](std::span<const double> u) {
                std::array<Complex, 6> z;
                cube_to_cgauss(u, z);
                return kernel_K(nu, spinors_from_coords(z));
            },
            12, cfg, stream_base);
    }
    rep.rhs = gaussian_moment_rhs(nu);
    rep.score(cfg.tolerance, sigmas_threshold);
    return rep;
}

}  // namespace zamint
