#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mpers {

/// Distance convention on the unit cube [0,1]^d.
enum class Metric {
    CubeEuclidean,
    FlatTorus,  ///< opposite faces identified, side length 1
};

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view s);

struct Provenance {
    std::uint64_t seed = 0;
    std::string generator;
};

/// Points in [0,1]^d stored row-major. Coordinates are validated on
/// insertion; a cloud never holds a point outside the closed cube.
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(int dim, Metric metric, Provenance provenance = {});

    int dim() const noexcept { return dim_; }
    Metric metric() const noexcept { return metric_; }
    const Provenance& provenance() const noexcept { return provenance_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_); }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const noexcept
    {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    std::span<const double> coords() const noexcept { return coords_; }

    void push_back(std::span<const double> p);
    void reserve(std::size_t n) { coords_.reserve(n * static_cast<std::size_t>(dim_)); }

    /// Same points with every coordinate multiplied by `factor` in (0,1].
    PointCloud scaled(double factor) const;
    /// Same coordinates under a different metric tag.
    PointCloud with_metric(Metric m) const;

private:
    int dim_ = 0;
    Metric metric_ = Metric::CubeEuclidean;
    Provenance provenance_;
    std::vector<double> coords_;
};

/// CSV with header `x0,...,x{d-1}` and 17 significant digits per value.
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_cloud_csv(const std::string& path, const PointCloud& cloud);
PointCloud read_cloud_csv(std::istream& in, Metric metric);
PointCloud read_cloud_csv(const std::string& path, Metric metric);

}  // namespace mpers
