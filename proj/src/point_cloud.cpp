#include "mpers/point_cloud.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "mpers/errors.hpp"
#include "text_util.hpp"

namespace mpers {

std::string_view to_string(Metric m)
{
    return m == Metric::FlatTorus ? "torus" : "cube";
}

Metric parse_metric(std::string_view s)
{
    if (s == "cube" || s == "CubeEuclidean" || s == "euclidean")
        return Metric::CubeEuclidean;
    if (s == "torus" || s == "FlatTorus")
        return Metric::FlatTorus;
    throw InvalidInput("unknown metric '" + std::string(s) + "' (expected cube or torus)");
}

PointCloud::PointCloud(int dim, Metric metric, Provenance provenance)
    : dim_(dim), metric_(metric), provenance_(std::move(provenance))
{
    if (dim < 2)
        throw InvalidInput("point dimension must be at least 2, got " + std::to_string(dim));
}

void PointCloud::push_back(std::span<const double> p)
{
    if (static_cast<int>(p.size()) != dim_)
        throw InvalidInput("point has dimension " + std::to_string(p.size()) + ", cloud has " +
                           std::to_string(dim_));
    for (double x : p) {
        if (!(x >= 0.0 && x <= 1.0))
            throw InvalidInput("coordinate " + detail::format_double(x) + " outside [0,1]");
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
}

PointCloud PointCloud::scaled(double factor) const
{
    if (!(factor > 0.0 && factor <= 1.0))
        throw InvalidInput("scale factor must lie in (0,1]");
    PointCloud out = *this;
    for (double& x : out.coords_)
        x *= factor;
    return out;
}

PointCloud PointCloud::with_metric(Metric m) const
{
    PointCloud out = *this;
    out.metric_ = m;
    return out;
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud)
{
    for (int c = 0; c < cloud.dim(); ++c)
        out << (c ? "," : "") << 'x' << c;
    out << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t c = 0; c < p.size(); ++c)
            out << (c ? "," : "") << detail::format_double(p[c]);
        out << '\n';
    }
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud)
{
    std::ofstream out(path);
    if (!out)
        throw IoError(path, "cannot open for writing");
    write_cloud_csv(out, cloud);
    if (!out)
        throw IoError(path, "write failed");
}

PointCloud read_cloud_csv(std::istream& in, Metric metric)
{
    std::string line;
    if (!std::getline(in, line))
        throw InvalidInput("point cloud CSV is empty");
    auto header = detail::split(line, ',');
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] != "x" + std::to_string(c))
            throw InvalidInput("unexpected point cloud header '" + line + "'");
    }
    PointCloud cloud(static_cast<int>(header.size()), metric, {0, "csv"});
    std::vector<double> p(header.size());
    while (std::getline(in, line)) {
        if (detail::trim(line).empty())
            continue;
        auto fields = detail::split(line, ',');
        if (fields.size() != header.size())
            throw InvalidInput("row has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size()));
        for (std::size_t c = 0; c < fields.size(); ++c)
            p[c] = detail::parse_double(fields[c]);
        cloud.push_back(p);
    }
    return cloud;
}

PointCloud read_cloud_csv(const std::string& path, Metric metric)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path, "cannot open for reading");
    return read_cloud_csv(in, metric);
}

}  // namespace mpers
