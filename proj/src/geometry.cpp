#include "mpers/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpers/errors.hpp"

namespace mpers {

namespace {

inline double axis_delta(double a, double b, Metric m)
{
    double d = std::abs(a - b);
    if (m == Metric::FlatTorus)
        d = std::min(d, 1.0 - d);
    return d;
}

void check_same_dim(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw InvalidInput("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
}

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b, Metric m)
{
    check_same_dim(a, b);
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        double d = axis_delta(a[c], b[c], m);
        s += d * d;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b, Metric m)
{
    return std::sqrt(squared_distance(a, b, m));
}

bool Ball::contains(std::span<const double> p, double rel_tol) const
{
    double d = distance(p, center, Metric::CubeEuclidean);
    return d <= radius * (1.0 + rel_tol) + rel_tol;
}

// ---------------------------------------------------------------------------
// Welzl / move-to-front

MebSolver::MebSolver(int dim) : dim_(dim), center_(static_cast<std::size_t>(dim))
{
    if (dim < 1)
        throw InvalidInput("ball dimension must be positive");
    support_.reserve(static_cast<std::size_t>(dim) + 1);
    rel_.resize(static_cast<std::size_t>(dim) * (dim + 1));
    sys_.resize(static_cast<std::size_t>(dim + 1) * (dim + 1));
    rhs_.resize(static_cast<std::size_t>(dim) + 1);
    saved_.resize(static_cast<std::size_t>(dim) * (dim + 2));
}

double MebSolver::solve(std::span<const double> coords, std::size_t count)
{
    if (count == 0)
        throw InvalidInput("minimal enclosing ball of an empty set");
    if (coords.size() != count * static_cast<std::size_t>(dim_))
        throw InvalidInput("coordinate buffer does not match point count");
    coords_ = coords;
    order_.resize(count);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    support_.clear();
    mtf(count);
    return std::sqrt(std::max(radius2_, 0.0));
}

bool MebSolver::outside(std::size_t idx) const
{
    if (radius2_ < 0.0)
        return true;
    const double* p = coords_.data() + idx * static_cast<std::size_t>(dim_);
    double s = 0.0;
    for (int c = 0; c < dim_; ++c) {
        double d = p[c] - center_[static_cast<std::size_t>(c)];
        s += d * d;
    }
    return s > radius2_ * (1.0 + 2.0 * kBallTolerance);
}

void MebSolver::mtf(std::size_t end)
{
    support_ball();
    if (static_cast<int>(support_.size()) == dim_ + 1 || (radius2_ < 0.0 && !support_.empty()))
        return;
    for (std::size_t i = 0; i < end; ++i) {
        std::size_t idx = order_[i];
        if (!outside(idx))
            continue;
        const std::size_t depth = support_.size();
        double* saved = saved_.data() + depth * static_cast<std::size_t>(dim_);
        std::copy(center_.begin(), center_.end(), saved);
        double saved_radius2 = radius2_;
        support_.push_back(idx);
        mtf(i);
        support_.pop_back();
        if (radius2_ < 0.0) {
            // Affinely dependent support: keep the previous ball.
            std::copy(saved, saved + dim_, center_.begin());
            radius2_ = saved_radius2;
            continue;
        }
        std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(i),
                    order_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
}

// Ball with every support point on its boundary and its center in their
// affine hull. Sets radius2_ < 0 if the support is affinely dependent.
void MebSolver::support_ball()
{
    const std::size_t dim = static_cast<std::size_t>(dim_);
    const std::size_t m = support_.size();
    if (m == 0) {
        radius2_ = -1.0;
        return;
    }
    const double* p0 = coords_.data() + support_[0] * dim;
    if (m == 1) {
        std::copy(p0, p0 + dim, center_.begin());
        radius2_ = 0.0;
        return;
    }
    const std::size_t k = m - 1;
    for (std::size_t a = 0; a < k; ++a) {
        const double* pa = coords_.data() + support_[a + 1] * dim;
        for (std::size_t c = 0; c < dim; ++c)
            rel_[a * dim + c] = pa[c] - p0[c];
    }
    double scale = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
            double dot = 0.0;
            for (std::size_t c = 0; c < dim; ++c)
                dot += rel_[a * dim + c] * rel_[b * dim + c];
            sys_[a * k + b] = sys_[b * k + a] = 2.0 * dot;
        }
        rhs_[a] = 0.5 * sys_[a * k + a];
        scale = std::max(scale, sys_[a * k + a]);
    }
    // Gaussian elimination with partial pivoting on the k x k Gram system.
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(sys_[r * k + col]) > std::abs(sys_[piv * k + col]))
                piv = r;
        }
        if (std::abs(sys_[piv * k + col]) <= 1e-13 * scale) {
            radius2_ = -1.0;
            return;
        }
        if (piv != col) {
            for (std::size_t c = 0; c < k; ++c)
                std::swap(sys_[piv * k + c], sys_[col * k + c]);
            std::swap(rhs_[piv], rhs_[col]);
        }
        for (std::size_t r = col + 1; r < k; ++r) {
            double f = sys_[r * k + col] / sys_[col * k + col];
            if (f == 0.0)
                continue;
            for (std::size_t c = col; c < k; ++c)
                sys_[r * k + c] -= f * sys_[col * k + c];
            rhs_[r] -= f * rhs_[col];
        }
    }
    for (std::size_t r = k; r-- > 0;) {
        double s = rhs_[r];
        for (std::size_t c = r + 1; c < k; ++c)
            s -= sys_[r * k + c] * rhs_[c];
        rhs_[r] = s / sys_[r * k + r];
    }
    for (std::size_t c = 0; c < dim; ++c) {
        double x = p0[c];
        for (std::size_t a = 0; a < k; ++a)
            x += rhs_[a] * rel_[a * dim + c];
        center_[c] = x;
    }
    double r2 = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        const double* p = coords_.data() + support_[s] * dim;
        double d2 = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            double d = p[c] - center_[c];
            d2 += d * d;
        }
        r2 = std::max(r2, d2);
    }
    radius2_ = r2;
}

Ball min_enclosing_ball(std::span<const Point> points, Metric m)
{
    if (points.empty())
        throw InvalidInput("minimal enclosing ball of an empty set");
    const std::size_t dim = points.front().size();
    if (dim == 0)
        throw InvalidInput("points must have positive dimension");
    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim)
            throw InvalidInput("dimension mismatch in point set");
        coords.insert(coords.end(), p.begin(), p.end());
    }
    if (m == Metric::FlatTorus) {
        for (std::size_t a = 0; a < points.size(); ++a) {
            for (std::size_t b = a + 1; b < points.size(); ++b) {
                if (distance(points[a], points[b], m) >= 0.25)
                    throw UnsupportedConfiguration(
                        "flat-torus enclosing ball needs point-set diameter below 1/4");
            }
        }
        const auto& anchor = points.front();
        for (std::size_t a = 1; a < points.size(); ++a) {
            for (std::size_t c = 0; c < dim; ++c) {
                double d = coords[a * dim + c] - anchor[c];
                coords[a * dim + c] = anchor[c] + (d - std::round(d));
            }
        }
    }
    MebSolver solver(static_cast<int>(dim));
    double r = solver.solve(coords, points.size());
    auto c = solver.center();
    return Ball{Point(c.begin(), c.end()), r};
}

// ---------------------------------------------------------------------------
// Neighbor search on a uniform grid

std::vector<NeighborPair> neighbor_pairs(const PointCloud& cloud, double r_max)
{
    if (!(r_max > 0.0))
        throw InvalidInput("neighbor radius must be positive");
    const std::size_t n = cloud.size();
    const int dim = cloud.dim();
    const Metric metric = cloud.metric();
    const double reach = 2.0 * r_max;
    const double reach2 = reach * reach;
    std::vector<NeighborPair> out;
    if (n < 2)
        return out;

    // Cell side >= reach, and roughly one point per cell at most.
    std::size_t per_axis = reach >= 1.0 ? 1 : static_cast<std::size_t>(std::floor(1.0 / reach));
    auto cap = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / dim))) + 1;
    per_axis = std::clamp<std::size_t>(per_axis, 1, std::max<std::size_t>(cap, 1));

    std::size_t n_cells = 1;
    for (int c = 0; c < dim; ++c)
        n_cells *= per_axis;

    auto cell_coord = [&](double x) {
        auto c = static_cast<std::size_t>(x * static_cast<double>(per_axis));
        return std::min(c, per_axis - 1);
    };
    std::vector<std::size_t> cell_of(n);
    std::vector<std::size_t> start(n_cells + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = cloud.point(i);
        std::size_t id = 0;
        for (int c = dim; c-- > 0;)
            id = id * per_axis + cell_coord(p[static_cast<std::size_t>(c)]);
        cell_of[i] = id;
        ++start[id + 1];
    }
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<std::uint32_t> members(n);
    {
        auto fill = start;
        for (std::size_t i = 0; i < n; ++i)
            members[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
    }

    std::vector<int> offset(static_cast<std::size_t>(dim), -1);
    std::vector<std::size_t> neighbors;
    std::vector<std::size_t> cc(static_cast<std::size_t>(dim));
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        if (start[cell] == start[cell + 1])
            continue;
        std::size_t rest = cell;
        for (int c = 0; c < dim; ++c) {
            cc[static_cast<std::size_t>(c)] = rest % per_axis;
            rest /= per_axis;
        }
        neighbors.clear();
        std::fill(offset.begin(), offset.end(), -1);
        while (true) {
            bool valid = true;
            std::size_t id = 0;
            for (int c = dim; c-- > 0;) {
                auto base = static_cast<long long>(cc[static_cast<std::size_t>(c)]) + offset[static_cast<std::size_t>(c)];
                auto pa = static_cast<long long>(per_axis);
                if (base < 0 || base >= pa) {
                    if (metric == Metric::CubeEuclidean) {
                        valid = false;
                        break;
                    }
                    base = (base % pa + pa) % pa;
                }
                id = id * per_axis + static_cast<std::size_t>(base);
            }
            if (valid)
                neighbors.push_back(id);
            int c = 0;
            while (c < dim && offset[static_cast<std::size_t>(c)] == 1)
                offset[static_cast<std::size_t>(c++)] = -1;
            if (c == dim)
                break;
            ++offset[static_cast<std::size_t>(c)];
        }
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());

        for (std::size_t a = start[cell]; a < start[cell + 1]; ++a) {
            std::uint32_t i = members[a];
            auto pi = cloud.point(i);
            for (std::size_t nb : neighbors) {
                for (std::size_t b = start[nb]; b < start[nb + 1]; ++b) {
                    std::uint32_t j = members[b];
                    if (j <= i)
                        continue;
                    double d2 = squared_distance(pi, cloud.point(j), metric);
                    if (d2 <= reach2)
                        out.push_back({i, j, std::sqrt(d2)});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const NeighborPair& a, const NeighborPair& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return out;
}

std::vector<std::size_t> epsilon_net(const PointCloud& cloud, double eps)
{
    if (!(eps > 0.0))
        throw InvalidInput("epsilon must be positive");
    std::vector<std::size_t> net;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        bool covered = std::any_of(net.begin(), net.end(), [&](std::size_t s) {
            return distance(p, cloud.point(s), cloud.metric()) < eps;
        });
        if (!covered)
            net.push_back(i);
    }
    return net;
}

}  // namespace mpers
