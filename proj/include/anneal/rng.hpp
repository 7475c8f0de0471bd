#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace anneal {

// All randomness in the toolkit is drawn from mt19937_64 streams.  A stream is
// identified by a (seed, id...) tuple mixed through SplitMix64, so independent
// parts of an experiment (instance generation, gauges, individual annealing
// runs) never share or overlap state.  Uniform doubles are produced from the
// top 53 bits of the generator output rather than std::uniform_real_distribution,
// which keeps byte-identical replay independent of the standard library.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t s = seed;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t id : ids) {
        s ^= id + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        out = splitmix64(s);
    }
    return out;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
        return Rng(mix_seed(seed, ids));
    }

    std::uint64_t bits() { return gen_(); }

    // Uniform on [0, 1).
    double canonical() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform on {-1, +1}.
    int pm1() { return (gen_() >> 63) ? 1 : -1; }

    // Uniform integer in [0, n).  Lemire multiply-shift; the bias for n far
    // below 2^64 is negligible and the mapping is fully deterministic.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace anneal
