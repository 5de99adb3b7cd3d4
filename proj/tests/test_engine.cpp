#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "zamint/monte_carlo.hpp"
#include "zamint/qmc.hpp"
#include "zamint/quadrature.hpp"
#include "zamint/rng.hpp"

using namespace zamint;

TEST_CASE("counter streams reproduce and separate") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool same_ab = true, same_ac = true, same_ad = true;
    for (int i = 0; i < 256; ++i) {
        const std::uint64_t x = a.next_u64();
        same_ab &= (x == b.next_u64());
        same_ac &= (x == c.next_u64());
        same_ad &= (x == d.next_u64());
    }
    CHECK(same_ab);
    CHECK_FALSE(same_ac);
    CHECK_FALSE(same_ad);
}

TEST_CASE("uniforms are equidistributed") {
    const int n = 200000;
    RngStream rng(1, 0);
    double sum = 0.0, sumsq = 0.0, serial = 0.0, prev = rng.next_double();
    sum = prev;
    sumsq = prev * prev;
    for (int i = 1; i < n; ++i) {
        const double u = rng.next_double();
        sum += u;
        sumsq += u * u;
        serial += (u - 0.5) * (prev - 0.5);
        prev = u;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
    CHECK(std::abs(var - 1.0 / 12.0) < 5e-3);
    CHECK(std::abs(serial / (n - 1)) < 4.0 / (12.0 * std::sqrt(double(n))));
}

TEST_CASE("distinct streams are uncorrelated") {
    const int n = 100000;
    RngStream s0(5, 0), s1(5, 1);
    double cross = 0.0;
    for (int i = 0; i < n; ++i)
        cross += (s0.next_double() - 0.5) * (s1.next_double() - 0.5);
    // E = 0, sd = sqrt(n)/12
    CHECK(std::abs(cross) < 4.0 * std::sqrt(double(n)) / 12.0);
}

TEST_CASE("normals and complex gaussians have the right moments") {
    const int n = 400000;
    RngStream rng(9, 3);
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        m1 += x;
        m2 += x * x;
    }
    CHECK(std::abs(m1 / n) < 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(m2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));

    Complex zs{};
    Complex z2{};
    double a2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const Complex z = rng.next_cgauss();
        zs += z;
        z2 += z * z;
        a2 += std::norm(z);
    }
    CHECK(std::abs(zs) / n < 5.0 / std::sqrt(double(n)));
    CHECK(std::abs(z2) / n < 5.0 / std::sqrt(double(n)));
    CHECK(std::abs(a2 / n - 1.0) < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("mc_expect of a constant is exact") {
    IntegrationConfig cfg;
    cfg.budget = 10000;
    cfg.chunk = 1024;
    const Estimate e = mc_expect([](double) { return Complex(1.0); },
                                 [](RngStream& r) { return r.next_double(); }, cfg);
    CHECK(e.value == Complex(1.0));
    CHECK(e.error == 0.0);
    CHECK(e.count == 10000);
}

TEST_CASE("mc_expect recovers gaussian moments within three errors") {
    IntegrationConfig cfg;
    cfg.budget = 1000000;
    cfg.seed = 11;

    const Estimate e2 = mc_expect(
        [](const Complex& z) { return Complex(std::norm(z)); },
        [](RngStream& r) { return r.next_cgauss(); }, cfg);
    CHECK(std::abs(e2.value - 1.0) <= 3.0 * e2.error);
    CHECK(e2.error < 3e-3);

    // r^3 on C^2: expectation Gamma(3.5)/Gamma(2)
    const Estimate e3 = mc_expect(
        [](const std::array<Complex, 2>& z) {
            return Complex(std::pow(std::norm(z[0]) + std::norm(z[1]), 1.5));
        },
        [](RngStream& r) {
            return std::array<Complex, 2>{r.next_cgauss(), r.next_cgauss()};
        },
        cfg);
    CHECK(std::abs(e3.value - 3.3233509704478426) <= 3.0 * e3.error);
}

TEST_CASE("mc_expect is bit-identical across worker counts") {
    IntegrationConfig cfg;
    cfg.budget = 300000;
    cfg.chunk = 4096;
    cfg.seed = 123;
    auto f = [](const Complex& z) { return Complex(std::norm(z), z.real()); };
    auto sampler = [](RngStream& r) { return r.next_cgauss(); };

    cfg.workers = 1;
    const Estimate e1 = mc_expect(f, sampler, cfg);
    for (int w : {2, 4, 8}) {
        cfg.workers = w;
        const Estimate ew = mc_expect(f, sampler, cfg);
        REQUIRE(ew.value.real() == e1.value.real());
        REQUIRE(ew.value.imag() == e1.value.imag());
        REQUIRE(ew.error == e1.error);
        REQUIRE(ew.count == e1.count);
    }
}

TEST_CASE("mc_expect raises on non-finite samples") {
    IntegrationConfig cfg;
    cfg.budget = 1000;
    cfg.chunk = 100;
    CHECK_THROWS_AS(
        mc_expect([](double u) { return Complex(1.0 / (u - u)); },
                  [](RngStream& r) { return r.next_double(); }, cfg),
        NonFiniteSampleError);
}

TEST_CASE("mc error bars are calibrated on a known mean") {
    IntegrationConfig cfg;
    cfg.budget = 20000;
    cfg.chunk = 4096;
    int covered = 0;
    const int reps = 100;
    for (int rep = 0; rep < reps; ++rep) {
        cfg.seed = 1000 + static_cast<std::uint64_t>(rep);
        const Estimate e = mc_expect(
            [](const Complex& z) { return Complex(std::norm(z)); },
            [](RngStream& r) { return r.next_cgauss(); }, cfg);
        if (std::abs(e.value - 1.0) <= 3.0 * e.error) ++covered;
    }
    CHECK(covered >= 96);  // 3-sigma coverage ~ 99.7%
}

TEST_CASE("tanh_sinh handles smooth and endpoint-singular integrands") {
    const auto sine = tanh_sinh(
        [](double x, double, double) { return Complex(std::sin(x)); }, 0.0,
        std::numbers::pi, 1e-12);
    CHECK(std::abs(sine.value - 2.0) < 1e-12);
    CHECK(std::abs(sine.value - 2.0) <= sine.error + 1e-15);

    // 1/sqrt(t): evaluated from the stable left distance
    const auto root = tanh_sinh(
        [](double, double da, double) { return Complex(1.0 / std::sqrt(da)); },
        0.0, 1.0, 1e-12);
    CHECK(std::abs(root.value - 2.0) < 1e-10);
    CHECK(std::abs(root.value - 2.0) <= root.error + 1e-14);
}

TEST_CASE("exp_sinh reproduces radial gamma integrals") {
    // int_0^inf 2 r^3 e^{-r^2} dr = Gamma(2) = 1
    const auto g2 = exp_sinh([](double r) {
        return Complex(2.0 * std::exp(3.0 * std::log(r) - r * r));
    });
    CHECK(std::abs(g2.value - 1.0) < 1e-11);
    // int_0^inf 2 r^2 e^{-r^2} dr = Gamma(1.5)
    const auto g15 = exp_sinh([](double r) {
        return Complex(2.0 * std::exp(2.0 * std::log(r) - r * r));
    });
    CHECK(std::abs(g15.value - 0.88622692545275801) < 1e-11);
    // oracle cross-check with the independent Simpson rule on a finite window
    const double simpson = oracles::adaptive_simpson(
        [](double r) { return 2.0 * r * r * std::exp(-r * r); }, 0.0, 12.0);
    CHECK(std::abs(g15.value - simpson) < 1e-10);
}

TEST_CASE("cubature over the supported domain kinds") {
    DomainSpec box1;
    box1.kind = DomainSpec::Kind::box;
    box1.dim = 1;
    box1.bounds = {{0.0, std::numbers::pi}};
    const Estimate s = cubature(
        [](std::span<const double> x) { return Complex(std::sin(x[0])); }, box1,
        1e-10);
    CHECK(std::abs(s.value - 2.0) < 1e-10);
    CHECK(std::abs(s.value - 2.0) <= s.error + 1e-14);

    DomainSpec sing;
    sing.kind = DomainSpec::Kind::box;
    sing.dim = 1;
    sing.bounds = {{0.0, 1.0}};
    sing.alpha = {{-0.5, 0.0}};
    const Estimate r = cubature(
        [](std::span<const double> x) { return Complex(1.0 / std::sqrt(x[0])); },
        sing, 1e-10);
    CHECK(std::abs(r.value - 2.0) < 1e-9);
    CHECK(std::abs(r.value - 2.0) <= r.error + 1e-12);

    DomainSpec sphere;
    sphere.kind = DomainSpec::Kind::sphere_product;
    sphere.dim = 1;
    const Estimate area =
        cubature([](std::span<const double>) { return Complex(1.0); }, sphere,
                 1e-10);
    CHECK(std::abs(area.value - 4.0 * std::numbers::pi) < 1e-9);

    DomainSpec box2;
    box2.kind = DomainSpec::Kind::box;
    box2.dim = 2;
    box2.bounds = {{0.0, 1.0}, {0.0, 1.0}};
    const Estimate xy = cubature(
        [](std::span<const double> x) { return Complex(x[0] * x[1]); }, box2,
        1e-10);
    CHECK(std::abs(xy.value - 0.25) < 1e-10);

    DomainSpec bad;
    bad.dim = 1;
    bad.bounds = {{0.0, 1.0}};
    bad.alpha = {{-1.5, 0.0}};
    CHECK_THROWS_AS(cubature([](std::span<const double>) { return Complex(1.0); },
                             bad, 1e-6),
                    std::invalid_argument);
}

TEST_CASE("qmc_expect on trivial and product integrands") {
    IntegrationConfig cfg;
    cfg.budget = 1 << 16;
    cfg.seed = 3;

    const Estimate one =
        qmc_expect([](std::span<const double>) { return Complex(1.0); }, 4, cfg);
    CHECK(one.value == Complex(1.0));
    CHECK(one.error == 0.0);

    const Estimate xy = qmc_expect(
        [](std::span<const double> u) { return Complex(u[0] * u[1]); }, 2, cfg);
    CHECK(std::abs(xy.value - 0.25) < 1e-4);

    // gaussian moment |z1 z2|^2 -> exactly 1 by independence
    const Estimate m = qmc_expect(
        [](std::span<const double> u) {
            std::array<Complex, 2> z;
            cube_to_cgauss(u.subspan(0, 4), z);
            return Complex(std::norm(z[0]) * std::norm(z[1]));
        },
        4, cfg.with_budget(1 << 18));
    IntegrationConfig mcc = cfg.with_budget(1 << 18);
    const Estimate mc = mc_expect(
        [](const std::array<Complex, 2>& z) {
            return Complex(std::norm(z[0]) * std::norm(z[1]));
        },
        [](RngStream& r) {
            return std::array<Complex, 2>{r.next_cgauss(), r.next_cgauss()};
        },
        mcc);
    CHECK(std::abs(m.value - mc.value) <=
          3.0 * std::hypot(m.error, mc.error) + 1e-3);
    CHECK(std::abs(m.value - 1.0) < 0.02);

    CHECK_THROWS_AS(
        qmc_expect([](std::span<const double>) { return Complex(1.0); }, 17, cfg),
        std::invalid_argument);
}

TEST_CASE("inverse normal cdf round-trips the normal cdf") {
    for (double p : {1e-6, 1e-3, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999, 1 - 1e-7}) {
        const double x = inverse_normal_cdf(p);
        const double back = 0.5 * std::erfc(-x / std::numbers::sqrt2);
        CHECK(std::abs(back - p) < 1e-12 * std::max(1.0, std::abs(x)));
    }
}
