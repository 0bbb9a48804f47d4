#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mpers/point_cloud.hpp"

namespace mpers {

using Point = std::vector<double>;

/// Relative tolerance used for ball containment tests.
inline constexpr double kBallTolerance = 1e-12;

double distance(std::span<const double> a, std::span<const double> b, Metric m);
double squared_distance(std::span<const double> a, std::span<const double> b, Metric m);

struct Ball {
    Point center;
    double radius = 0.0;

    bool contains(std::span<const double> p, double rel_tol = kBallTolerance) const;
};

/// Smallest enclosing ball by Welzl's move-to-front recursion.
///
/// The solver owns its scratch buffers so that repeated calls on small
/// point sets (the Čech builder calls it once per candidate simplex) do not
/// allocate. Not thread-safe; use one solver per thread.
class MebSolver {
public:
    explicit MebSolver(int dim);

    /// Euclidean ball of `count` points stored row-major in `coords`.
    /// Returns the radius; `center()` holds the center afterwards.
    double solve(std::span<const double> coords, std::size_t count);

    std::span<const double> center() const noexcept { return center_; }

private:
    void mtf(std::size_t end);
    void support_ball();
    bool outside(std::size_t idx) const;

    int dim_;
    std::span<const double> coords_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> support_;
    std::vector<double> center_;
    double radius2_ = 0.0;

    std::vector<double> rel_;
    std::vector<double> sys_;
    std::vector<double> rhs_;
    std::vector<double> saved_;
};

/// Smallest ball containing `points`. On the flat torus the points are
/// first unwrapped around the first point; the set's diameter must be
/// below 1/4 so that the unwrapping is unique.
Ball min_enclosing_ball(std::span<const Point> points, Metric m);

struct NeighborPair {
    std::uint32_t i;
    std::uint32_t j;
    double distance;

    friend bool operator==(const NeighborPair&, const NeighborPair&) = default;
};

/// All pairs i < j with distance(i, j) <= 2 * r_max, ordered by (i, j).
std::vector<NeighborPair> neighbor_pairs(const PointCloud& cloud, double r_max);

/// Greedy ε-net in ascending index order: a point joins the net when no
/// earlier net point lies strictly within `eps` of it.
std::vector<std::size_t> epsilon_net(const PointCloud& cloud, double eps);

}  // namespace mpers
