#pragma once

// Parameter algebra shared by all verification modules: the coupled
// (sigma, nu) triples, convergence-domain classification, and the
// Estimate / IntegrationConfig value types.

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zamint {

using Complex = std::complex<double>;
using ComplexTriple = std::array<Complex, 3>;

// Thrown when a requested evaluation lies outside the convergence domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when a Gamma-factor argument lands on a non-positive integer.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when a kernel is evaluated at an exact coincidence with a
// negative real exponent.
struct CoincidenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a deterministic rule cannot reach the requested tolerance
// within the evaluation budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a sampled integrand returns NaN or infinity.
struct NonFiniteSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// nu[i] = sigma[i+1] + sigma[i+2] - sigma[i], indices cyclic mod 3.
inline ComplexTriple nu_from_sigma(const ComplexTriple& s) {
    return {s[1] + s[2] - s[0], s[2] + s[0] - s[1], s[0] + s[1] - s[2]};
}

/// Inverse of nu_from_sigma: sigma[i] = (nu[i+1] + nu[i+2]) / 2.
inline ComplexTriple sigma_from_nu(const ComplexTriple& n) {
    return {0.5 * (n[1] + n[2]), 0.5 * (n[2] + n[0]), 0.5 * (n[0] + n[1])};
}

// A point of the coupled (sigma, nu) parameter space. Both triples are
// stored; the constructor enforces the linear relation between them.
struct ParameterPoint {
    ComplexTriple sigma;
    ComplexTriple nu;

    static ParameterPoint from_sigma(const ComplexTriple& s) {
        return ParameterPoint{s, nu_from_sigma(s)};
    }
    static ParameterPoint from_nu(const ComplexTriple& n) {
        return ParameterPoint{sigma_from_nu(n), n};
    }
};

enum class DomainStatus { ok, divergent, mc_variance_warning };

struct DomainCheck {
    DomainStatus status = DomainStatus::ok;
    std::string reason;

    bool convergent() const { return status != DomainStatus::divergent; }
};

// The integral converges iff Re sigma_i > 1/2 and Re nu_i > 0 for all i.
// Inside that domain, plain importance-sampled MC has infinite variance
// once min Re nu <= 1/2 or min Re sigma <= 1; such points are flagged so
// callers can route to the deterministic path.
inline DomainCheck check_domain(const ParameterPoint& p) {
    for (int i = 0; i < 3; ++i) {
        if (!(p.sigma[i].real() > 0.5))
            return {DomainStatus::divergent,
                    "Re sigma_" + std::to_string(i + 1) + " <= 1/2"};
        if (!(p.nu[i].real() > 0.0))
            return {DomainStatus::divergent,
                    "Re nu_" + std::to_string(i + 1) + " <= 0"};
    }
    for (int i = 0; i < 3; ++i) {
        if (p.nu[i].real() <= 0.5)
            return {DomainStatus::mc_variance_warning,
                    "Re nu_" + std::to_string(i + 1) +
                        " <= 1/2: plain MC variance is infinite"};
        if (p.sigma[i].real() <= 1.0)
            return {DomainStatus::mc_variance_warning,
                    "Re sigma_" + std::to_string(i + 1) +
                        " <= 1: plain MC variance is infinite"};
    }
    return {DomainStatus::ok, ""};
}

enum class Method { mc, qmc, cubature, closed_form };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::mc: return "mc";
        case Method::qmc: return "qmc";
        case Method::cubature: return "cubature";
        case Method::closed_form: return "closed-form";
    }
    return "?";
}

// A numerical value with an error bound: one standard error for the
// stochastic methods, a nested-rule difference bound for cubature,
// exactly zero for closed forms.
struct Estimate {
    Complex value{};
    double error = 0.0;       // >= 0
    std::int64_t count = 1;   // samples or function evaluations
    Method method = Method::closed_form;
};

struct IntegrationConfig {
    std::int64_t budget = 1'000'000;  // samples, or max evaluations for cubature
    std::uint64_t seed = 0;
    double tolerance = 1e-6;          // relative, deterministic methods
    int workers = 1;
    std::int64_t chunk = 65536;       // samples per deterministic RNG sub-stream

    void validate() const {
        if (chunk < 1 || budget < chunk)
            throw std::invalid_argument("IntegrationConfig: need budget >= chunk >= 1");
        if (workers < 1)
            throw std::invalid_argument("IntegrationConfig: need workers >= 1");
        if (!(tolerance > 0))
            throw std::invalid_argument("IntegrationConfig: need tolerance > 0");
    }

    IntegrationConfig with_seed(std::uint64_t s) const {
        IntegrationConfig c = *this;
        c.seed = s;
        return c;
    }
    IntegrationConfig with_budget(std::int64_t b) const {
        IntegrationConfig c = *this;
        c.budget = b;
        if (c.chunk > b) c.chunk = b;
        return c;
    }
};

}  // namespace zamint
