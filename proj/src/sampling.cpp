#include "mpers/sampling.hpp"

#include <cmath>
#include <string>

#include "mpers/errors.hpp"

namespace mpers {

namespace {

void fill_uniform(PointCloud& cloud, std::size_t count, std::mt19937_64& eng)
{
    std::vector<double> p(static_cast<std::size_t>(cloud.dim()));
    cloud.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (double& x : p)
            x = uniform01(eng);
        cloud.push_back(p);
    }
}

}  // namespace

PointCloud sample_poisson(double n, int d, Metric m, const RngStream& rng)
{
    if (!(n > 0.0) || !std::isfinite(n))
        throw InvalidInput("Poisson intensity must be positive and finite");
    if (d < 2)
        throw InvalidInput("dimension must be at least 2");
    auto eng = rng.engine();
    std::poisson_distribution<std::size_t> count_dist(n);
    std::size_t count = count_dist(eng);
    PointCloud cloud(d, m, {rng.seed(), "poisson"});
    fill_uniform(cloud, count, eng);
    return cloud;
}

PointCloud sample_fixed(std::size_t n, int d, Metric m, const RngStream& rng)
{
    if (d < 2)
        throw InvalidInput("dimension must be at least 2");
    auto eng = rng.engine();
    PointCloud cloud(d, m, {rng.seed(), "fixed"});
    fill_uniform(cloud, n, eng);
    return cloud;
}

LowerBoundConfiguration lower_bound_configuration(const LowerBoundSpec& spec)
{
    const int d = spec.d;
    const int k = spec.k;
    if (d < 2)
        throw InvalidInput("dimension must be at least 2");
    if (k < 1 || k > d - 1)
        throw InvalidInput("cycle degree must satisfy 1 <= k <= d-1");
    if (!(spec.ell > 0.0) || !(spec.L > 4.0 * spec.ell))
        throw InvalidInput("need ell > 0 and L > 4 ell");

    std::vector<double> center(static_cast<std::size_t>(d), 0.5);
    if (spec.offset) {
        if (static_cast<int>(spec.offset->size()) != d)
            throw InvalidInput("offset dimension does not match d");
        center = *spec.offset;
    }
    for (double c : center) {
        if (c - spec.L < 0.0 || c + spec.L > 1.0)
            throw InvalidInput("box of half-side L around the offset does not fit in the unit cube");
    }

    // Tiles per side of the (k+1)-dimensional outer square; L_hat = K * ell.
    const auto K = static_cast<std::size_t>(std::floor(spec.L / spec.ell + 1e-9));
    const double half = 0.5 * static_cast<double>(K) * spec.ell;
    const auto shell_dims = static_cast<std::size_t>(k + 1);

    LowerBoundConfiguration out{PointCloud(d, Metric::CubeEuclidean, {0, "lower-bound"}), 0, K, center,
                                spec.L / spec.ell / (4.0 * std::sqrt(static_cast<double>(d)))};

    // Lexicographic walk over the K^(k+1) lattice; keep cells touching the
    // outer layer (some index 0 or K-1). The remaining d-k-1 axes hold a
    // single tile centered on the box.
    std::vector<std::size_t> idx(shell_dims, 0);
    std::vector<double> p(static_cast<std::size_t>(d));
    while (true) {
        bool on_shell = false;
        for (std::size_t a = 0; a < shell_dims; ++a)
            on_shell = on_shell || idx[a] == 0 || idx[a] + 1 == K;
        if (on_shell) {
            for (std::size_t a = 0; a < static_cast<std::size_t>(d); ++a) {
                double local = 0.0;
                if (a < shell_dims)
                    local = -half + (static_cast<double>(idx[a]) + 0.5) * spec.ell;
                p[a] = center[a] + local;
            }
            out.cloud.push_back(p);
        }
        std::size_t a = shell_dims;
        while (a-- > 0) {
            if (++idx[a] < K)
                break;
            idx[a] = 0;
        }
        if (a == static_cast<std::size_t>(-1))
            break;
    }
    out.m = out.cloud.size();
    return out;
}

}  // namespace mpers
