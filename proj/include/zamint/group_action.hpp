#pragma once

// SL(2,C) group elements, Haar sampling on SU(2), and the test-function
// family carried through both realizations: homogeneous functions on
// (C^2)^n and their restrictions to the line y = 1.
//
// Convention: spinors are rows and the group acts by right translation,
// (gf)(x) = f(xg). On line-model functions of homogeneity degree mu this
// induces (gf)(z) = |bz + d|^{2 mu} f((az + c)/(bz + d)); with degrees
// lambda - 2 this is exactly the action that leaves the line functional
// with weight (1+|z|^2)^{-lambda} invariant under SU(2).

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "zamint/gauss_moments.hpp"
#include "zamint/params.hpp"
#include "zamint/rng.hpp"

namespace zamint {

struct GroupElement {
    Complex a{1.0}, b{}, c{}, d{1.0};

    GroupElement() = default;
    GroupElement(Complex a_, Complex b_, Complex c_, Complex d_)
        : a(a_), b(b_), c(c_), d(d_) {
        if (std::abs(a * d - b * c - 1.0) > 1e-12)
            throw std::invalid_argument("GroupElement: det must be 1");
    }

    static GroupElement identity() { return {}; }
    static GroupElement diagonal(Complex t) { return {t, 0.0, 0.0, 1.0 / t}; }
    static GroupElement from_unit_pair(Complex alpha, Complex beta) {
        return {alpha, beta, -std::conj(beta), std::conj(alpha)};
    }

    GroupElement operator*(const GroupElement& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                c * o.b + d * o.d};
    }

    /// Right translation of a row spinor: (x1, x2) g.
    Spinor apply_row(const Spinor& x) const {
        return {x.a * a + x.b * c, x.a * b + x.b * d};
    }

    Complex mobius(const Complex& z) const {
        const Complex den = b * z + d;
        if (den == Complex{})
            throw PoleError("GroupElement: evaluation at bz + d = 0");
        return (a * z + c) / den;
    }

    Complex cocycle(const Complex& z) const { return b * z + d; }
};

/// Haar-distributed SU(2) element: (alpha, beta) uniform on the unit
/// sphere of C^2.
inline GroupElement haar_su2(RngStream& rng) {
    Complex alpha(rng.next_normal(), rng.next_normal());
    Complex beta(rng.next_normal(), rng.next_normal());
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= n;
    beta /= n;
    return GroupElement::from_unit_pair(alpha, beta);
}

// ---------------------------------------------------------------------------
// Test functions.

// A function in the principal-series picture: a line evaluator on C^n plus
// optional extra structure used by the deterministic integration routes.
struct TestFunction {
    int n = 1;
    std::vector<Complex> degrees;  // homogeneity degree per coordinate

    std::function<Complex(std::span<const Complex>)> line;
    std::function<Complex(std::span<const Spinor>)> homogeneous;  // optional

    // Optional fast-path structure (n = 1 only):
    std::function<Complex(double)> radial;                  // f = radial(|w|)
    std::function<Complex(double, double)> pair_radial;     // f = g(|x|, |y|)
    std::vector<TestFunction> factors;                      // product structure
    bool is_kernel = false;
    ComplexTriple kernel_nu{};

    /// K-invariant radial power of degree lambda - 2:
    /// (|x|^2+|y|^2)^{lambda-2} upstairs, (1+|z|^2)^{lambda-2} on the line.
    static TestFunction radial_power(Complex lambda) {
        TestFunction f;
        f.n = 1;
        f.degrees = {lambda - 2.0};
        const Complex p = lambda - 2.0;
        f.line = [p](std::span<const Complex> z) {
            return std::exp(p * std::log1p(std::norm(z[0])));
        };
        f.homogeneous = [p](std::span<const Spinor> w) {
            return std::exp(p * std::log(std::norm(w[0].a) + std::norm(w[0].b)));
        };
        f.radial = [p](double r) { return std::exp(2.0 * p * std::log(r)); };
        f.pair_radial = [p](double r1, double r2) {
            return std::exp(p * std::log(r1 * r1 + r2 * r2));
        };
        return f;
    }

    /// Degree lambda - 2 with adjustable decay: (1+|z|^2)^{lambda-2+mu} on
    /// the line, (|x|^2+|y|^2)^{lambda-2+mu} |y|^{-2mu} upstairs. Not
    /// K-invariant unless mu = 0.
    static TestFunction fs_mixed(Complex lambda, double mu) {
        TestFunction f;
        f.n = 1;
        f.degrees = {lambda - 2.0};
        const Complex p = lambda - 2.0 + mu;
        const double m = mu;
        f.line = [p](std::span<const Complex> z) {
            return std::exp(p * std::log1p(std::norm(z[0])));
        };
        f.homogeneous = [p, m](std::span<const Spinor> w) {
            const double r2 = std::norm(w[0].a) + std::norm(w[0].b);
            const double y2 = std::norm(w[0].b);
            return std::exp(p * std::log(r2) - m * std::log(y2));
        };
        f.pair_radial = [p, m](double r1, double r2) {
            return std::exp(p * std::log(r1 * r1 + r2 * r2) -
                            2.0 * m * std::log(r2));
        };
        if (mu == 0.0)
            f.radial = [p](double r) { return std::exp(2.0 * p * std::log(r)); };
        return f;
    }

    /// The determinant kernel as a three-coordinate test function of
    /// degrees 2 sigma_i - 2.
    static TestFunction det_kernel(const ComplexTriple& nu) {
        TestFunction f;
        f.n = 3;
        const ComplexTriple sg = sigma_from_nu(nu);
        f.degrees = {2.0 * sg[0] - 2.0, 2.0 * sg[1] - 2.0, 2.0 * sg[2] - 2.0};
        f.is_kernel = true;
        f.kernel_nu = nu;
        f.line = [nu](std::span<const Complex> z) {
            const std::array<double, 3> d{std::abs(z[0] - z[1]),
                                          std::abs(z[1] - z[2]),
                                          std::abs(z[2] - z[0])};
            const std::array<Complex, 3> e{2.0 * nu[2] - 2.0, 2.0 * nu[0] - 2.0,
                                           2.0 * nu[1] - 2.0};
            Complex le{};
            for (int k = 0; k < 3; ++k) {
                if (e[k] == Complex{}) continue;
                if (d[k] < kCoincidenceCutoff) {
                    if (e[k].real() <= 0.0)
                        throw CoincidenceError("det_kernel: coinciding points");
                    return Complex{};
                }
                le += e[k] * std::log(d[k]);
            }
            return std::exp(le);
        };
        f.homogeneous = [nu](std::span<const Spinor> w) {
            return kernel_K(nu, {w[0], w[1], w[2]});
        };
        return f;
    }

    /// Product of one-coordinate test functions.
    static TestFunction product(std::vector<TestFunction> fs) {
        TestFunction f;
        f.n = static_cast<int>(fs.size());
        for (const TestFunction& fi : fs) {
            if (fi.n != 1)
                throw std::invalid_argument("TestFunction::product: factors must have n = 1");
            f.degrees.push_back(fi.degrees[0]);
        }
        auto fs_shared = std::make_shared<std::vector<TestFunction>>(fs);
        f.line = [fs_shared](std::span<const Complex> z) {
            Complex v = 1.0;
            for (std::size_t i = 0; i < fs_shared->size(); ++i)
                v *= (*fs_shared)[i].line(z.subspan(i, 1));
            return v;
        };
        bool all_hom = true;
        for (const TestFunction& fi : fs)
            if (!fi.homogeneous) all_hom = false;
        if (all_hom)
            f.homogeneous = [fs_shared](std::span<const Spinor> w) {
                Complex v = 1.0;
                for (std::size_t i = 0; i < fs_shared->size(); ++i)
                    v *= (*fs_shared)[i].homogeneous(w.subspan(i, 1));
                return v;
            };
        f.factors = std::move(fs);
        return f;
    }
};

/// The transformed test function g . f, with the same degrees. Line model:
/// (gf)(z) = prod_i |b z_i + d|^{2 deg_i} f(mobius(z_i)...); homogeneous
/// model: composition with right translation.
inline TestFunction act(const GroupElement& g, const TestFunction& f) {
    if (!f.line) throw std::invalid_argument("act: f has no line evaluator");
    TestFunction out;
    out.n = f.n;
    out.degrees = f.degrees;
    auto base = std::make_shared<TestFunction>(f);
    const std::vector<Complex> degs = f.degrees;
    out.line = [g, base, degs](std::span<const Complex> z) {
        std::vector<Complex> w(z.size());
        Complex le{};
        for (std::size_t i = 0; i < z.size(); ++i) {
            const Complex den = g.cocycle(z[i]);
            if (den == Complex{})
                throw PoleError("act: evaluation at bz + d = 0");
            w[i] = (g.a * z[i] + g.c) / den;
            le += 2.0 * degs[i] * std::log(std::abs(den));
        }
        return std::exp(le) * base->line(w);
    };
    if (f.homogeneous) {
        out.homogeneous = [g, base](std::span<const Spinor> x) {
            std::vector<Spinor> xg(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) xg[i] = g.apply_row(x[i]);
            return base->homogeneous(xg);
        };
    }
    if (!f.factors.empty()) {
        std::vector<TestFunction> tf;
        tf.reserve(f.factors.size());
        for (const TestFunction& fi : f.factors) tf.push_back(act(g, fi));
        out.factors = std::move(tf);
    }
    return out;
}

}  // namespace zamint
