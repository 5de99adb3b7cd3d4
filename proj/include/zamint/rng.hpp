#pragma once

// Counter-based random streams. Each (seed, stream_id) pair names an
// independent reproducible sequence; sub-streams can be handed to worker
// threads without any shared state. The generator is a 10-round Philox-style
// 2x64 bijection: key = seed, counter = (block index, stream_id).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace zamint {

namespace detail {

inline void mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) {
    const unsigned __int128 p =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline constexpr std::uint64_t kPhiloxMul = 0xD2B74407B1CE6E93ull;
inline constexpr std::uint64_t kPhiloxWeyl = 0x9E3779B97F4A7C15ull;

inline void philox2x64_10(std::uint64_t& c0, std::uint64_t& c1,
                          std::uint64_t key) {
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi, lo;
        mulhilo64(kPhiloxMul, c0, hi, lo);
        c0 = hi ^ key ^ c1;
        c1 = lo;
        key += kPhiloxWeyl;
    }
}

}  // namespace detail

class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        std::uint64_t c0 = block_++, c1 = stream_id_;
        detail::philox2x64_10(c0, c1, seed_);
        spare_ = c1;
        have_spare_ = true;
        return c0;
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform strictly inside (0, 1); safe to pass to log().
    double next_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard real normal (mean 0, variance 1), Box-Muller pairs.
    double next_normal() {
        if (have_normal_) {
            have_normal_ = false;
            return normal_spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(next_open()));
        const double t = 2.0 * std::numbers::pi * next_double();
        normal_spare_ = r * std::sin(t);
        have_normal_ = true;
        return r * std::cos(t);
    }

    /// Standard complex Gaussian: density e^{-|z|^2} / pi, so E|z|^2 = 1.
    std::complex<double> next_cgauss() {
        const double r = std::sqrt(-std::log(next_open()));
        const double t = 2.0 * std::numbers::pi * next_double();
        return {r * std::cos(t), r * std::sin(t)};
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
    double normal_spare_ = 0.0;
    bool have_normal_ = false;
};

/// Stateless mix for deriving per-task seeds from a base seed and a tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed ^ (salt + 0x9E3779B97F4A7C15ull);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

/// FNV-1a of a short tag, for seed derivation by check name.
inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace zamint
