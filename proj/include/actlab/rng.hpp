#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace actlab {

// Deterministic per-run random stream.
//
// The generator is std::mt19937_64, whose algorithm and single-value seeding
// procedure are fixed by the C++ standard, so identical (master_seed,
// stream_id) give identical draw sequences on every platform. All derived
// draws below are defined purely in terms of 64-bit generator outputs:
//
//   stream seed     mix64(mix64(master_seed) ^ mix64(stream_id ^ 0x5851f42d4c957f2d))
//                   where mix64 is the SplitMix64 finalizer
//   next_double     (next_u64() >> 11) * 2^-53, uniform on [0, 1)
//   uniform_below   modulo rejection: draw r until r >= 2^64 mod bound,
//                   return r % bound
//   shuffle         Fisher-Yates, i from n-1 down to 1, j = uniform_below(i+1)
//   exponential     -log(1 - next_double()) / rate
//
// Exponential draws go through std::log and therefore inherit the libm's
// rounding; everything else is bit-exact by construction.
//
// draw_count() counts raw 64-bit generator outputs and backs the engine's
// zero-draw purity checks.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : master_seed_(master_seed),
          stream_id_(stream_id),
          engine_(derive_stream_seed(master_seed, stream_id)) {}

    static std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
        return mix64(mix64(master_seed) ^ mix64(stream_id ^ 0x5851f42d4c957f2dULL));
    }

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    // Uniform on [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Exponential inter-event time with the given rate (> 0).
    double exponential(double rate) {
        return -std::log(1.0 - next_double()) / rate;
    }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        shuffle_range(values.data(), values.size());
    }

    template <typename T>
    void shuffle_range(T* data, std::size_t n) {
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(data[i - 1], data[j]);
        }
    }

    std::uint64_t draw_count() const { return draws_; }
    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    static std::uint64_t mix64(std::uint64_t x) {
        // SplitMix64 finalizer (Steele, Lea, Flood 2014).
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

} // namespace actlab
