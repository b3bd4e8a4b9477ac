#pragma once

#include <cstdint>

namespace dboot {

/// Address of one random stream inside a simulation. Level 0 draws the data,
/// level 1 draws outer resamples (index b), level 2 draws inner resamples
/// (indices b, c). Streams at distinct addresses are independent, so a
/// worker can draw the inner stream for (b, c) without knowing how many
/// draws any other stream has made.
struct SeedPath {
    std::uint64_t trial = 0;
    std::uint32_t level = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;

    static SeedPath data(std::uint64_t trial) { return {trial, 0, 0, 0}; }
    static SeedPath outer(std::uint64_t trial, std::uint64_t b) { return {trial, 1, b, 0}; }
    static SeedPath inner(std::uint64_t trial, std::uint64_t b, std::uint64_t c) {
        return {trial, 2, b, c};
    }
};

namespace detail {
/// Output finalizer of the splitmix64 generator. Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Stream key for (master_seed, path). Fields are absorbed one at a time
/// through the bijective mixer, so two paths differing in any single field
/// always map to different keys given the same prefix. This function is the
/// complete definition of the seeding scheme; changing it changes every
/// simulated number.
inline std::uint64_t stream_key(std::uint64_t master_seed, const SeedPath& path) {
    std::uint64_t k = detail::mix64(master_seed ^ 0xa0761d6478bd642fULL);
    k = detail::mix64(k + path.trial);
    k = detail::mix64(k + path.level);
    k = detail::mix64(k + path.b);
    return detail::mix64(k + path.c);
}

/// Counter-based generator: output i is mix64(key + i * gamma), the
/// splitmix64 sequence seeded with the stream key. Stateless apart from the
/// counter, cheap to construct, and reproducible from (master_seed, path)
/// alone.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() { return detail::mix64(state_ += kGamma); }

    /// Uniform on [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1); safe to feed inverse CDFs.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    /// Uniform index on [0, n). Lemire multiply-shift with rejection, no
    /// modulo bias.
    std::uint32_t next_index(std::uint32_t n) {
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0ULL - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 64);
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t state_;
};

inline CounterRng make_stream(std::uint64_t master_seed, const SeedPath& path) {
    return CounterRng(stream_key(master_seed, path));
}

} // namespace dboot
