#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mpers/point_cloud.hpp"

namespace mpers {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// A reproducible random stream: root seed plus substream index.
struct RngStream {
    std::uint64_t root = 0;
    std::uint64_t index = 0;

    std::uint64_t seed() const noexcept { return splitmix64(root ^ index); }
    std::mt19937_64 engine() const { return std::mt19937_64(seed()); }
};

/// Uniform double in [0,1) from the top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& eng)
{
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Poisson process of intensity `n` on [0,1]^d.
PointCloud sample_poisson(double n, int d, Metric m, const RngStream& rng);

/// Exactly `n` i.i.d. uniform points on [0,1]^d.
PointCloud sample_fixed(std::size_t n, int d, Metric m, const RngStream& rng);

/// Thickened boundary of a (k+1)-cube of side ~L inside a box of side 2L,
/// tiled by cubes of side `ell`, one point at each tile center.
struct LowerBoundSpec {
    int d = 2;
    int k = 1;
    double ell = 0.01;
    double L = 0.08;
    /// Center of the enclosing box; defaults to the cube center.
    std::optional<std::vector<double>> offset;
};

struct LowerBoundConfiguration {
    PointCloud cloud;
    std::size_t m = 0;  ///< number of tiles (= number of points)
    std::size_t tiles_per_side = 0;
    std::vector<double> center;
    /// The persistence the enclosed cycle is guaranteed to reach:
    /// (L / ell) / (4 sqrt(d)).
    double guaranteed_persistence = 0.0;
};

LowerBoundConfiguration lower_bound_configuration(const LowerBoundSpec& spec);

}  // namespace mpers
