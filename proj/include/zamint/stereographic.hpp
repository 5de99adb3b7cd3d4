#pragma once

// The stereographic chart between S^2 and the complex plane, uniform
// sphere sampling, and the Fubini-Study importance density
// 1/(pi (1+|z|^2)^2) it induces.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "zamint/params.hpp"
#include "zamint/rng.hpp"

namespace zamint {

struct SpherePoint {
    double x = 0.0, y = 0.0, z = 1.0;

    double dot(const SpherePoint& o) const { return x * o.x + y * o.y + z * o.z; }
};

/// u -> z = (u_x + i u_y) / (1 - u_z).
inline Complex stereographic(const SpherePoint& u) {
    return Complex(u.x, u.y) / (1.0 - u.z);
}

/// z -> u = (2 Re z, 2 Im z, |z|^2 - 1) / (1 + |z|^2).
inline SpherePoint stereographic_inverse(const Complex& z) {
    const double n = std::norm(z);
    const double d = 1.0 + n;
    return {2.0 * z.real() / d, 2.0 * z.imag() / d, (n - 1.0) / d};
}

inline SpherePoint sample_sphere(RngStream& rng) {
    const double uz = 2.0 * rng.next_double() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.next_double();
    const double s = std::sqrt(std::max(0.0, 1.0 - uz * uz));
    return {s * std::cos(phi), s * std::sin(phi), uz};
}

/// One draw from the Fubini-Study density 1/(pi (1+|z|^2)^2): a uniform
/// sphere point pushed through the stereographic chart. The radial law is
/// P(|z| <= R) = R^2 / (1 + R^2).
inline Complex fs_sample(RngStream& rng) {
    return stereographic(sample_sphere(rng));
}

/// Largest relative deviation of the chordal identity
///   |z-w|^2 = (1+|z|^2)(1+|w|^2)(1 - <u(z),u(w)>)/2
/// over random pairs; the prerequisite gate for the sphere reduction.
inline double chordal_identity_max_dev(std::int64_t pairs, std::uint64_t seed) {
    RngStream rng(seed, hash_tag("chordal"));
    double worst = 0.0;
    for (std::int64_t i = 0; i < pairs; ++i) {
        const Complex z = fs_sample(rng), w = fs_sample(rng);
        const double lhs = std::norm(z - w);
        const double rhs = (1.0 + std::norm(z)) * (1.0 + std::norm(w)) * 0.5 *
                           (1.0 - stereographic_inverse(z).dot(stereographic_inverse(w)));
        const double dev = std::abs(lhs - rhs) / std::max({lhs, rhs, 1e-300});
        worst = std::max(worst, dev);
    }
    return worst;
}

}  // namespace zamint
