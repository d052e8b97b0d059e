#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mgwi {

/// splitmix64 finalizer.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Mixes a parent seed with an ordered list of keys into a child seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed,
                                        std::initializer_list<std::uint64_t> keys) noexcept;

/// 64-bit FNV-1a over a byte string. Used for stable hashing of labels.
[[nodiscard]] std::uint64_t fnv1a64(const void* data, std::size_t size) noexcept;

/**
 * A single-owner random stream.
 *
 * Streams are move-only. Parallel callers never share one; they derive child
 * streams with child(), which depends only on the parent's seed and the keys,
 * never on how many draws the parent has consumed.
 */
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed);

    Rng(const Rng&) = delete;
    Rng& operator=(const Rng&) = delete;
    Rng(Rng&&) noexcept = default;
    Rng& operator=(Rng&&) noexcept = default;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    [[nodiscard]] Rng child(std::uint64_t key) const { return Rng(derive_seed(seed_, {key})); }
    [[nodiscard]] Rng child(std::initializer_list<std::uint64_t> keys) const {
        return Rng(derive_seed(seed_, keys));
    }

    /// Uniform draw on (0, 1] with 53 bits of resolution.
    [[nodiscard]] double open_uniform() noexcept;

    [[nodiscard]] engine_type& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    engine_type engine_;
};

}  // namespace mgwi
