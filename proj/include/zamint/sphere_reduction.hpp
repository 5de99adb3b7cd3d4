#pragma once

// Deterministic evaluation of the uniform three-sphere moment
//
//   E[ s12^{nu3-1} s23^{nu1-1} s13^{nu2-1} ],   s_ij = (1 - <u_i, u_j>)/2,
//
// over independent uniform points of S^2. Rotational symmetry pins u1 at
// the pole and u2 on a fixed meridian, leaving a 3-dimensional integral in
// (theta2, theta3, phi3):
//
//   E = (1/8pi) int sin(theta2) sin(theta3) F dtheta2 dtheta3 dphi3.
//
// All coincidence singularities sit on coordinate edges once the theta3
// range is split at theta2; nested tanh-sinh rules absorb the resulting
// endpoint powers. Everything near-singular is computed from endpoint
// distances:
//
//   s12 = sin^2(theta2/2),  s13 = sin^2(theta3/2),
//   s23 = sin^2((theta2-theta3)/2) + sin(theta2) sin(theta3) sin^2(phi3/2).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "zamint/params.hpp"
#include "zamint/quadrature.hpp"

namespace zamint {

namespace detail {

struct PhiNode {
    double sin2_half;  // sin^2(phi/2)
    double w;
};

template <bool RealExp>
Complex reduced_level_sum(const ComplexTriple& nu, int lev_out, int lev_mid,
                          int lev_in, std::int64_t& evals) {
    const double pi = std::numbers::pi;
    const Complex e12 = nu[2] - 1.0;
    const Complex e23 = nu[0] - 1.0;
    const Complex e13 = nu[1] - 1.0;

    std::vector<PhiNode> phi;
    ts_foreach_node(0.0, pi, lev_in, [&](double x, double da, double db, double w) {
        (void)x;
        const double sh = (da <= db) ? std::sin(0.5 * da) : std::cos(0.5 * db);
        phi.push_back({sh * sh, w});
    });

    auto pair_pow = [](double s, const Complex& e) -> Complex {
        if constexpr (RealExp) return Complex(std::pow(s, e.real()), 0.0);
        return std::exp(e * std::log(s));
    };

    Complex total{};
    ts_foreach_node(0.0, pi, lev_out, [&](double th2, double d2a, double d2b,
                                          double w2) {
        const double sh2 = (d2a <= d2b) ? std::sin(0.5 * d2a) : std::cos(0.5 * d2b);
        const double sin_th2 = std::sin(std::min(d2a, d2b));
        const Complex f12 = pair_pow(sh2 * sh2, e12);

        Complex mid{};
        for (int box = 0; box < 2; ++box) {
            const double a = box == 0 ? 0.0 : th2;
            const double b = box == 0 ? th2 : pi;
            if (!(b > a)) continue;
            ts_foreach_node(a, b, lev_mid, [&](double x3, double d3a, double d3b,
                                               double w3) {
                double th3, delta;  // delta = |theta3 - theta2|, stable
                if (box == 0) {
                    th3 = d3a;
                    delta = d3b;
                } else {
                    th3 = x3;
                    delta = d3a;
                }
                const double sh3 =
                    (box == 0) ? std::sin(0.5 * th3)
                               : ((d3a <= d3b) ? std::sin(0.5 * x3) : std::cos(0.5 * d3b));
                const double sin_th3 =
                    (box == 1 && d3b < d3a) ? std::sin(d3b) : std::sin(th3);
                const Complex f13 = pair_pow(sh3 * sh3, e13);
                const double shd = std::sin(0.5 * delta);
                const double base = shd * shd;
                const double cross = sin_th2 * sin_th3;
                const Complex pre = f12 * f13 * (w3 * sin_th3);

                Complex inner{};
                for (const PhiNode& pn : phi)
                    inner += pn.w * pair_pow(base + cross * pn.sin2_half, e23);
                evals += static_cast<std::int64_t>(phi.size());
                mid += pre * (2.0 * inner);  // phi integrand symmetric about pi
            });
        }
        total += (w2 * sin_th2) * mid;
    });
    return total / (8.0 * pi);
}

}  // namespace detail

/// E over three independent uniform sphere points of the pairwise product
/// above, refined until |E_l - E_{l-1}| <= rel_tol |E_l| or the evaluation
/// budget runs out. Requires Re nu_i > 0.
inline Estimate reduced_triple_moment(const ComplexTriple& nu, double rel_tol,
                                      std::int64_t max_evals = 1 << 26) {
    for (const Complex& ni : nu)
        if (!(ni.real() > 0.0))
            throw DomainError("reduced_triple_moment: needs Re nu_i > 0");
    const bool real_exp =
        nu[0].imag() == 0.0 && nu[1].imag() == 0.0 && nu[2].imag() == 0.0;

    Estimate est;
    est.method = Method::cubature;
    std::int64_t evals = 0;
    Complex prev{};
    for (int level = 3;; ++level) {
        const int lev_in = std::max(2, level - 1);
        const Complex cur =
            real_exp
                ? detail::reduced_level_sum<true>(nu, level, level, lev_in, evals)
                : detail::reduced_level_sum<false>(nu, level, level, lev_in, evals);
        if (level > 3) {
            est.error = std::abs(cur - prev);
            est.value = cur;
            est.count = evals;
            if (est.error <= rel_tol * std::abs(cur)) return est;
            // cost grows ~8x per level; stop before blowing the budget
            if (evals * 8 > max_evals)
                throw BudgetError(
                    "reduced_triple_moment: tolerance unreachable within budget");
        }
        prev = cur;
    }
}

}  // namespace zamint
