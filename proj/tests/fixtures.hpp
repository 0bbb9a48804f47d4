#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "mpers/point_cloud.hpp"

namespace fixtures {

inline mpers::PointCloud cloud(int d, mpers::Metric m, std::initializer_list<std::vector<double>> pts)
{
    mpers::PointCloud c(d, m, {0, "fixture"});
    for (const auto& p : pts)
        c.push_back(p);
    return c;
}

// The four corners of [0,1]^2.
inline mpers::PointCloud unit_square()
{
    return cloud(2, mpers::Metric::CubeEuclidean, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline mpers::PointCloud circle(std::size_t n, double radius)
{
    mpers::PointCloud c(2, mpers::Metric::CubeEuclidean, {0, "circle"});
    for (std::size_t i = 0; i < n; ++i) {
        double t = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        c.push_back(std::vector<double>{0.5 + radius * std::cos(t), 0.5 + radius * std::sin(t)});
    }
    return c;
}

}  // namespace fixtures
