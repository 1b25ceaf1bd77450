#ifndef QKD_RNG_HPP
#define QKD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string_view>

namespace qkd {

// Deterministic PRNG used everywhere in the simulator. Runs must be exactly
// reproducible from (seed, purpose, index) on both endpoints of a session,
// so we pin the generator instead of relying on std:: distribution internals.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Stream bound to a purpose tag and index, independent of other streams
    // derived from the same master seed.
    static Rng stream(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0) {
        std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
        for (char c : purpose) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        std::uint64_t sm = h;
        std::uint64_t mixed = splitmix64(sm) ^ (index * 0x9e3779b97f4a7c15ULL);
        return Rng(mixed);
    }

    std::uint64_t next_u64() {  // xoshiro256**
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    std::uint32_t bit() { return static_cast<std::uint32_t>(next_u64() >> 63); }

    // Unbiased integer in [0, bound).
    std::uint64_t bounded(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Poisson by inversion; fine for the small means used here (mu <= ~25).
    unsigned poisson(double mean) {
        if (mean <= 0.0) return 0;
        double u = next_double();
        double p = std::exp(-mean);
        double cum = p;
        unsigned k = 0;
        while (u > cum && k < 4096) {
            ++k;
            p *= mean / k;
            cum += p;
        }
        return k;
    }

    double gaussian(double sigma) {
        // Box-Muller, one value per call (second discarded to keep streams simple).
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace qkd

#endif
