#pragma once

// Seeded parallel Monte Carlo with a fixed-order reduction. The sample
// budget is split into chunks; chunk i always consumes stream
// (seed, stream_base + i) and partial sums are combined in chunk order,
// so the resulting Estimate is bit-identical for any worker count.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

#include "zamint/params.hpp"
#include "zamint/rng.hpp"

namespace zamint {

namespace detail {

struct ChunkSums {
    double sum_re = 0.0, sum_im = 0.0;
    double sumsq_re = 0.0, sumsq_im = 0.0;
    std::int64_t n = 0;
    bool finite = true;
};

inline Estimate reduce_chunks(const std::vector<ChunkSums>& chunks, Method method) {
    double sr = 0, si = 0, qr = 0, qi = 0;
    std::int64_t n = 0;
    for (const ChunkSums& c : chunks) {
        if (!c.finite)
            throw NonFiniteSampleError("mc_expect: integrand returned NaN/inf");
        sr += c.sum_re;
        si += c.sum_im;
        qr += c.sumsq_re;
        qi += c.sumsq_im;
        n += c.n;
    }
    Estimate e;
    e.count = n;
    e.method = method;
    e.value = Complex(sr / double(n), si / double(n));
    if (n > 1) {
        const double vr = std::max(0.0, (qr - sr * sr / double(n)) / double(n - 1));
        const double vi = std::max(0.0, (qi - si * si / double(n)) / double(n - 1));
        e.error = std::sqrt((vr + vi) / double(n));
    }
    return e;
}

}  // namespace detail

/// Sample mean of f(sampler(rng)) over config.budget i.i.d. draws.
/// error = componentwise standard error, combined in quadrature.
template <class Sampler, class F>
Estimate mc_expect(F&& f, Sampler&& sampler, const IntegrationConfig& cfg,
                   std::uint64_t stream_base = 0) {
    cfg.validate();
    const std::int64_t n_chunks = (cfg.budget + cfg.chunk - 1) / cfg.chunk;
    std::vector<detail::ChunkSums> chunks(static_cast<std::size_t>(n_chunks));

    auto run_chunk = [&](std::int64_t ci) {
        detail::ChunkSums& out = chunks[static_cast<std::size_t>(ci)];
        RngStream rng(cfg.seed, stream_base + static_cast<std::uint64_t>(ci));
        const std::int64_t m =
            std::min<std::int64_t>(cfg.chunk, cfg.budget - ci * cfg.chunk);
        for (std::int64_t k = 0; k < m; ++k) {
            const Complex v = f(sampler(rng));
            const double re = v.real(), im = v.imag();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                out.finite = false;
                return;
            }
            out.sum_re += re;
            out.sum_im += im;
            out.sumsq_re += re * re;
            out.sumsq_im += im * im;
        }
        out.n = m;
    };

    const int workers = static_cast<int>(
        std::min<std::int64_t>(cfg.workers, n_chunks));
    if (workers <= 1) {
        for (std::int64_t ci = 0; ci < n_chunks; ++ci) run_chunk(ci);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::int64_t ci = next.fetch_add(1); ci < n_chunks;
                     ci = next.fetch_add(1))
                    run_chunk(ci);
            });
        for (std::thread& t : pool) t.join();
    }
    return detail::reduce_chunks(chunks, Method::mc);
}

}  // namespace zamint
