#pragma once

// Deterministic quadrature: tanh-sinh (double-exponential) rules for finite
// intervals with endpoint singularities x^alpha, alpha > -1, an exp-sinh
// rule for the half line, a midpoint rule for periodic factors, and a
// DomainSpec-driven dispatcher for product domains.
//
// Integrands on finite intervals receive (x, dist_a, dist_b). The distances
// come straight from the transform, so they stay meaningful long after x
// itself has rounded onto an endpoint; singular factors must be evaluated
// from them, never from x - a.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "zamint/params.hpp"

namespace zamint {

struct QuadResult {
    Complex value{};
    double error = 0.0;
    std::int64_t evals = 0;
};

namespace detail {

struct TsNode {
    double dnear;  // unit-interval distance from the nearer endpoint
    double w;      // (pi/4) cosh(t) / cosh^2(u), without the h factor
};

inline constexpr int kTsMaxLevel = 12;

// Nodes with t = k h > 0 for one refinement level of the unit rule:
// level 0 holds the grid t = 0, 1, 2, ...; level l >= 1 the odd multiples
// of 2^-l. The t = 0 node appears as the first entry of level 0.
inline const std::vector<TsNode>& ts_level_nodes(int level) {
    constexpr double t_max = 4.1;
    static const std::vector<std::vector<TsNode>> cache = [] {
        std::vector<std::vector<TsNode>> out;
        for (int l = 0; l <= kTsMaxLevel; ++l) {
            std::vector<TsNode> nodes;
            const double h = std::ldexp(1.0, -l);
            const int start = (l == 0) ? 0 : 1;
            const int step = (l == 0) ? 1 : 2;
            for (int k = start;; k += step) {
                const double t = k * h;
                if (t > t_max) break;
                const double u = 0.5 * std::numbers::pi * std::sinh(t);
                const double dnear = 1.0 / (1.0 + std::exp(2.0 * u));
                const double ch = std::cosh(u);
                const double w = 0.25 * std::numbers::pi * std::cosh(t) / (ch * ch);
                if (!(dnear > 0.0) || !(w > 0.0)) break;
                nodes.push_back({dnear, w});
            }
            out.push_back(std::move(nodes));
        }
        return out;
    }();
    return cache.at(static_cast<std::size_t>(level));
}

template <class F>
Complex ts_level_sum(F& f, double a, double b, int level, std::int64_t& evals) {
    // Raw sum of w * f over the level's new nodes (no h factor).
    const double len = b - a;
    const auto& nodes = ts_level_nodes(level);
    Complex s{};
    std::size_t i = 0;
    if (level == 0) {
        s += nodes[0].w * f(a + 0.5 * len, 0.5 * len, 0.5 * len);
        ++evals;
        i = 1;
    }
    for (; i < nodes.size(); ++i) {
        const double dn = nodes[i].dnear * len;
        const double df = len - dn;
        s += nodes[i].w * (f(a + dn, dn, df) + f(b - dn, df, dn));
        evals += 2;
    }
    return s;
}

}  // namespace detail

/// Visit every tanh-sinh node of refinement `level` on (a, b):
/// fn(x, dist_a, dist_b, weight), with sum(weight) ~= b - a.
template <class Fn>
void ts_foreach_node(double a, double b, int level, Fn&& fn) {
    const double len = b - a;
    const double h = std::ldexp(1.0, -level);
    for (int l = 0; l <= level; ++l) {
        const auto& nodes = detail::ts_level_nodes(l);
        std::size_t i = 0;
        if (l == 0) {
            fn(a + 0.5 * len, 0.5 * len, 0.5 * len, nodes[0].w * h * len);
            i = 1;
        }
        for (; i < nodes.size(); ++i) {
            const double dn = nodes[i].dnear * len;
            const double df = len - dn;
            const double w = nodes[i].w * h * len;
            fn(a + dn, dn, df, w);
            fn(b - dn, df, dn, w);
        }
    }
}

/// Adaptive tanh-sinh integration of f(x, dist_a, dist_b) over (a, b).
/// The reported error is the difference between the last two levels.
template <class F>
QuadResult tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-10,
                     int max_level = 10, std::int64_t max_evals = 1 << 26) {
    if (!(b > a)) return {Complex{}, 0.0, 0};
    QuadResult res;
    Complex cum{};  // sum of w * f over all nodes evaluated so far
    Complex prev{};
    for (int level = 0; level <= max_level; ++level) {
        cum += detail::ts_level_sum(f, a, b, level, res.evals);
        const Complex cur = std::ldexp(1.0, -level) * (b - a) * cum;
        if (level > 0) {
            res.error = std::abs(cur - prev);
            res.value = cur;
            if (level >= 2 && res.error <= rel_tol * std::abs(cur)) return res;
        }
        prev = cur;
        if (res.evals > max_evals)
            throw BudgetError("tanh_sinh: evaluation budget exhausted");
    }
    return res;
}

/// Exp-sinh integration of f(x) over (0, inf) for integrands with an
/// integrable power behavior at 0 and (super)polynomial decay at infinity.
/// Nodes where f over- or underflows contribute zero.
template <class F>
QuadResult exp_sinh(F&& f, double rel_tol = 1e-10, int max_level = 10) {
    constexpr double t_max = 5.2;
    QuadResult res;
    Complex cum{};
    Complex prev{};
    auto term = [&](double t) -> Complex {
        const double u = 0.5 * std::numbers::pi * std::sinh(t);
        if (std::abs(u) > 690.0) return Complex{};
        const double x = std::exp(u);
        const double w = 0.5 * std::numbers::pi * std::cosh(t) * x;
        ++res.evals;
        const Complex fv = f(x);
        if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag())) return Complex{};
        return w * fv;
    };
    for (int level = 0; level <= max_level; ++level) {
        const double h = std::ldexp(1.0, -level);
        if (level == 0) {
            cum += term(0.0);
            for (double t = 1.0; t <= t_max; t += 1.0) cum += term(t) + term(-t);
        } else {
            for (double t = h; t <= t_max; t += 2.0 * h) cum += term(t) + term(-t);
        }
        const Complex cur = h * cum;
        if (level > 0) {
            res.error = std::abs(cur - prev);
            res.value = cur;
            if (level >= 2 && res.error <= rel_tol * std::abs(cur)) return res;
        }
        prev = cur;
    }
    return res;
}

/// Midpoint rule with doubling for smooth periodic f over [0, period].
template <class F>
QuadResult periodic_midpoint(F&& f, double period, double rel_tol = 1e-10,
                             int max_points = 1 << 14) {
    QuadResult res;
    Complex prev{};
    for (int m = 8;; m *= 2) {
        Complex s{};
        const double h = period / m;
        for (int k = 0; k < m; ++k) s += f(h * (k + 0.5));
        res.evals += m;
        const Complex cur = h * s;
        if (m > 8) {
            res.error = std::abs(cur - prev);
            res.value = cur;
            if (res.error <= rel_tol * std::abs(cur) || 2 * m > max_points)
                return res;
        }
        prev = cur;
    }
}

// ---------------------------------------------------------------------------
// Generic product-domain driver.

struct DomainSpec {
    enum class Kind { box, sphere_product, half_line_radial };
    Kind kind = Kind::box;
    int dim = 1;  // axes for box, spheres for sphere_product, radii otherwise
    std::vector<std::array<double, 2>> bounds;  // box only, per axis
    // Per-axis endpoint singularity exponents (alpha_left, alpha_right);
    // the double-exponential rules absorb any alpha > -1, so these are
    // declarative, but they are validated.
    std::vector<std::array<double, 2>> alpha;

    void validate() const {
        if (dim < 1) throw std::invalid_argument("DomainSpec: dim >= 1");
        if (kind == Kind::box && static_cast<int>(bounds.size()) != dim)
            throw std::invalid_argument("DomainSpec: bounds must match dim");
        for (const auto& ab : alpha)
            if (!(ab[0] > -1.0) || !(ab[1] > -1.0))
                throw std::invalid_argument(
                    "DomainSpec: endpoint exponents must be > -1");
    }
};

namespace detail {

template <class F>
Complex box_nest(F& f, const DomainSpec& dom, std::vector<double>& coords,
                 int axis, double rel_tol, std::int64_t max_evals,
                 std::int64_t& evals, double& err_acc) {
    const auto [a, b] = dom.bounds[static_cast<std::size_t>(axis)];
    auto g = [&](double x, double da, double db) -> Complex {
        // keep singularities at a coordinate origin exactly resolvable
        coords[static_cast<std::size_t>(axis)] = (a == 0.0) ? da : x;
        (void)db;
        if (axis + 1 == dom.dim) {
            ++evals;
            return f(std::span<const double>(coords));
        }
        return box_nest(f, dom, coords, axis + 1, rel_tol, max_evals, evals,
                        err_acc);
    };
    QuadResult r = tanh_sinh(g, a, b, rel_tol);
    if (evals > max_evals) throw BudgetError("cubature: evaluation budget exhausted");
    err_acc += r.error;
    return r.value;
}

}  // namespace detail

/// Deterministic integration of f over the given domain.
///  - box: f(coords), Lebesgue measure on the product of intervals
///  - sphere_product: f(u_1 .. u_k), each u_i a flattened unit 3-vector,
///    surface measure on (S^2)^k
///  - half_line_radial: f(r_1 .. r_k), Lebesgue measure on (0, inf)^k
template <class F>
Estimate cubature(F&& f, const DomainSpec& dom, double rel_tol,
                  std::int64_t max_evals = 1 << 26) {
    dom.validate();
    Estimate est;
    est.method = Method::cubature;
    std::int64_t evals = 0;
    double err_acc = 0.0;

    switch (dom.kind) {
        case DomainSpec::Kind::box: {
            std::vector<double> coords(static_cast<std::size_t>(dom.dim));
            est.value = detail::box_nest(f, dom, coords, 0, rel_tol, max_evals,
                                         evals, err_acc);
            break;
        }
        case DomainSpec::Kind::sphere_product: {
            std::vector<double> us(static_cast<std::size_t>(3 * dom.dim));
            std::function<Complex(int)> level = [&](int s) -> Complex {
                auto g = [&](double theta, double da, double db) -> Complex {
                    const double sin_th = std::sin(std::min(da, db));
                    const double cos_th = std::cos(theta);
                    auto h = [&](double phi) -> Complex {
                        us[static_cast<std::size_t>(3 * s) + 0] = sin_th * std::cos(phi);
                        us[static_cast<std::size_t>(3 * s) + 1] = sin_th * std::sin(phi);
                        us[static_cast<std::size_t>(3 * s) + 2] = cos_th;
                        if (s + 1 == dom.dim) {
                            ++evals;
                            return f(std::span<const double>(us));
                        }
                        return level(s + 1);
                    };
                    QuadResult ph =
                        periodic_midpoint(h, 2.0 * std::numbers::pi, rel_tol);
                    err_acc += ph.error;
                    return sin_th * ph.value;
                };
                QuadResult r = tanh_sinh(g, 0.0, std::numbers::pi, rel_tol);
                if (evals > max_evals)
                    throw BudgetError("cubature: evaluation budget exhausted");
                err_acc += r.error;
                return r.value;
            };
            est.value = level(0);
            break;
        }
        case DomainSpec::Kind::half_line_radial: {
            std::vector<double> rs(static_cast<std::size_t>(dom.dim));
            std::function<Complex(int)> level = [&](int s) -> Complex {
                auto g = [&](double r) -> Complex {
                    rs[static_cast<std::size_t>(s)] = r;
                    if (s + 1 == dom.dim) {
                        ++evals;
                        return f(std::span<const double>(rs));
                    }
                    return level(s + 1);
                };
                QuadResult r = exp_sinh(g, rel_tol);
                if (evals > max_evals)
                    throw BudgetError("cubature: evaluation budget exhausted");
                err_acc += r.error;
                return r.value;
            };
            est.value = level(0);
            break;
        }
    }
    est.error = err_acc;
    est.count = evals;
    return est;
}

}  // namespace zamint
