#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpers/point_cloud.hpp"

namespace mpers {

using Vertex = std::uint32_t;

enum class Flavor { Cech, Rips };

std::string_view to_string(Flavor f);
Flavor parse_flavor(std::string_view s);

/// Simplex with explicit filtration value, used to assemble complexes by hand.
struct SimplexEntry {
    std::vector<Vertex> vertices;
    double value = 0.0;
};

/// A filtered simplicial complex in its total order
/// (value, dimension, lexicographic vertex list).
///
/// Simplices of each dimension are stored in lexicographic order in one
/// flat vertex array; `position` maps them into the total order. Positions
/// 0..size()-1 are what persistence pairs refer to.
class FilteredComplex {
public:
    struct Info {
        Flavor flavor = Flavor::Rips;
        Metric metric = Metric::CubeEuclidean;
        int ambient_dim = 2;
        double r_max = 0.0;
        int max_dim = 1;
        std::size_t n_points = 0;
    };

    FilteredComplex() = default;

    /// Builds a complex from an explicit simplex list (any order). Vertex
    /// lists are sorted; duplicates and non-zero vertex values are rejected.
    /// Closure and monotonicity are *not* checked here; the persistence
    /// engines verify them.
    static FilteredComplex from_simplices(std::vector<SimplexEntry> simplices, Info info);

    const Info& info() const noexcept { return info_; }
    Flavor flavor() const noexcept { return info_.flavor; }
    double r_max() const noexcept { return info_.r_max; }
    int max_dim() const noexcept { return info_.max_dim; }
    std::size_t n_points() const noexcept { return info_.n_points; }

    std::size_t size() const noexcept { return order_.size(); }
    bool empty() const noexcept { return order_.empty(); }
    /// Highest dimension actually present, or -1 when empty.
    int top_dim() const noexcept { return static_cast<int>(layers_.size()) - 1; }
    std::size_t count(int dim) const noexcept;

    int dim(std::size_t pos) const noexcept { return static_cast<int>(order_[pos].dim); }
    /// Index of the simplex at `pos` within its dimension layer.
    std::size_t local_index(std::size_t pos) const noexcept { return order_[pos].local; }
    double value(std::size_t pos) const noexcept { return layer(order_[pos].dim).values[order_[pos].local]; }
    std::span<const Vertex> vertices(std::size_t pos) const noexcept
    {
        return layer_vertices(order_[pos].dim, order_[pos].local);
    }

    /// Per-dimension access in lexicographic order.
    std::span<const Vertex> layer_vertices(int dim, std::size_t local) const noexcept
    {
        const auto& l = layer(dim);
        auto w = static_cast<std::size_t>(dim) + 1;
        return {l.verts.data() + local * w, w};
    }
    std::size_t layer_position(int dim, std::size_t local) const noexcept { return layer(dim).position[local]; }

    /// Total-order position of the simplex with these (sorted) vertices.
    std::optional<std::size_t> find(std::span<const Vertex> vertices) const;
    /// Lexicographic index of the simplex within its dimension layer.
    std::optional<std::size_t> find_local(std::span<const Vertex> vertices) const;

    /// Plain-text export, one simplex per line: `value dim v0 ... vdim`.
    void write_text(std::ostream& out) const;

    friend bool operator==(const FilteredComplex& a, const FilteredComplex& b);

private:
    friend class ComplexBuilder;

    struct Layer {
        std::vector<Vertex> verts;
        std::vector<double> values;
        std::vector<std::uint32_t> position;
        /// Simplices whose first vertex is v occupy [first_start[v], first_start[v+1]).
        std::vector<std::uint32_t> first_start;
    };
    struct Ref {
        std::uint32_t dim;
        std::uint32_t local;
    };

    const Layer& layer(int dim) const noexcept { return layers_[static_cast<std::size_t>(dim)]; }
    void finalize_order();
    void build_lookup();

    Info info_;
    std::vector<Layer> layers_;
    std::vector<Ref> order_;
};

/// Vietoris-Rips filtration: value = half the largest pairwise distance.
FilteredComplex build_rips(const PointCloud& cloud, double r_max, int max_dim);

/// Čech filtration: value = radius of the smallest enclosing ball.
FilteredComplex build_cech(const PointCloud& cloud, double r_max, int max_dim);

FilteredComplex build_filtration(const PointCloud& cloud, Flavor flavor, double r_max, int max_dim);

/// c * (log n / n)^(1/d), clamped to 1/8 on the flat torus.
double default_rmax(double n, int d, double c = 3.0, Metric m = Metric::CubeEuclidean);

/// Largest radius cap accepted on the flat torus.
inline constexpr double kTorusMaxRadius = 0.125;

}  // namespace mpers
