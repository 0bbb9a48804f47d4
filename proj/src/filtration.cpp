#include "mpers/filtration.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <cmath>
#include <numbers>
#include <ostream>

#include "mpers/errors.hpp"
#include "mpers/geometry.hpp"
#include "text_util.hpp"

namespace mpers {

std::string_view to_string(Flavor f)
{
    return f == Flavor::Cech ? "cech" : "rips";
}

Flavor parse_flavor(std::string_view s)
{
    if (s == "cech" || s == "Cech")
        return Flavor::Cech;
    if (s == "rips" || s == "Rips")
        return Flavor::Rips;
    throw InvalidInput("unknown flavor '" + std::string(s) + "' (expected cech or rips)");
}

namespace {

int lex_compare(const Vertex* a, const Vertex* b, std::size_t w)
{
    for (std::size_t c = 0; c < w; ++c) {
        if (a[c] != b[c])
            return a[c] < b[c] ? -1 : 1;
    }
    return 0;
}

}  // namespace

std::size_t FilteredComplex::count(int dim) const noexcept
{
    if (dim < 0 || dim >= static_cast<int>(layers_.size()))
        return 0;
    return layers_[static_cast<std::size_t>(dim)].values.size();
}

std::optional<std::size_t> FilteredComplex::find_local(std::span<const Vertex> vertices) const
{
    if (vertices.empty() || vertices.size() > layers_.size())
        return std::nullopt;
    const int dim = static_cast<int>(vertices.size()) - 1;
    const auto& l = layer(dim);
    const std::size_t w = vertices.size();
    if (static_cast<std::size_t>(vertices[0]) + 1 >= l.first_start.size())
        return std::nullopt;
    std::size_t lo = l.first_start[vertices[0]];
    std::size_t hi = l.first_start[vertices[0] + 1];
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (lex_compare(l.verts.data() + mid * w, vertices.data(), w) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < l.values.size() && lex_compare(l.verts.data() + lo * w, vertices.data(), w) == 0)
        return lo;
    return std::nullopt;
}

std::optional<std::size_t> FilteredComplex::find(std::span<const Vertex> vertices) const
{
    auto local = find_local(vertices);
    if (!local)
        return std::nullopt;
    return layer(static_cast<int>(vertices.size()) - 1).position[*local];
}

void FilteredComplex::finalize_order()
{
    order_.clear();
    std::size_t total = 0;
    for (const auto& l : layers_)
        total += l.values.size();
    order_.reserve(total);
    for (std::size_t d = 0; d < layers_.size(); ++d) {
        for (std::size_t i = 0; i < layers_[d].values.size(); ++i)
            order_.push_back({static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(i)});
    }
    std::sort(order_.begin(), order_.end(), [this](const Ref& a, const Ref& b) {
        double va = layers_[a.dim].values[a.local];
        double vb = layers_[b.dim].values[b.local];
        if (va != vb)
            return va < vb;
        if (a.dim != b.dim)
            return a.dim < b.dim;
        return a.local < b.local;
    });
    for (auto& l : layers_)
        l.position.assign(l.values.size(), 0);
    for (std::size_t p = 0; p < order_.size(); ++p)
        layers_[order_[p].dim].position[order_[p].local] = static_cast<std::uint32_t>(p);
    build_lookup();
}

void FilteredComplex::build_lookup()
{
    for (std::size_t d = 0; d < layers_.size(); ++d) {
        auto& l = layers_[d];
        const std::size_t w = d + 1;
        const std::size_t count = l.values.size();
        const std::size_t bound = count == 0 ? 0 : static_cast<std::size_t>(l.verts[(count - 1) * w]) + 1;
        l.first_start.assign(bound + 1, 0);
        for (std::size_t s = 0; s < count; ++s)
            ++l.first_start[l.verts[s * w] + 1];
        for (std::size_t v = 0; v < bound; ++v)
            l.first_start[v + 1] += l.first_start[v];
    }
}

FilteredComplex FilteredComplex::from_simplices(std::vector<SimplexEntry> simplices, Info info)
{
    FilteredComplex fc;
    fc.info_ = info;
    std::size_t top = 0;
    for (auto& s : simplices) {
        if (s.vertices.empty())
            throw InvalidInput("simplex with no vertices");
        std::sort(s.vertices.begin(), s.vertices.end());
        if (std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
            throw InvalidInput("simplex has a repeated vertex");
        if (!(s.value >= 0.0) || !std::isfinite(s.value))
            throw InvalidInput("filtration values must be finite and non-negative");
        if (s.vertices.size() == 1 && s.value != 0.0)
            throw InvalidInput("vertices must enter the filtration at value 0");
        top = std::max(top, s.vertices.size());
    }
    std::sort(simplices.begin(), simplices.end(), [](const SimplexEntry& a, const SimplexEntry& b) {
        if (a.vertices.size() != b.vertices.size())
            return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    for (std::size_t i = 1; i < simplices.size(); ++i) {
        if (simplices[i].vertices == simplices[i - 1].vertices)
            throw InvalidInput("duplicate simplex in input");
    }
    fc.layers_.resize(top);
    for (const auto& s : simplices) {
        auto& l = fc.layers_[s.vertices.size() - 1];
        l.verts.insert(l.verts.end(), s.vertices.begin(), s.vertices.end());
        l.values.push_back(s.value);
    }
    if (fc.info_.n_points == 0 && !fc.layers_.empty())
        fc.info_.n_points = fc.layers_[0].values.size();
    fc.finalize_order();
    return fc;
}

void FilteredComplex::write_text(std::ostream& out) const
{
    for (std::size_t p = 0; p < size(); ++p) {
        out << detail::format_double(value(p)) << ' ' << dim(p);
        for (Vertex v : vertices(p))
            out << ' ' << v;
        out << '\n';
    }
}

bool operator==(const FilteredComplex& a, const FilteredComplex& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t p = 0; p < a.size(); ++p) {
        if (a.value(p) != b.value(p) || a.dim(p) != b.dim(p))
            return false;
        auto va = a.vertices(p);
        auto vb = b.vertices(p);
        if (!std::equal(va.begin(), va.end(), vb.begin(), vb.end()))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Construction by clique expansion over the neighbor graph

class ComplexBuilder {
public:
    ComplexBuilder(const PointCloud& cloud, Flavor flavor, double r_max, int max_dim)
        : cloud_(cloud), flavor_(flavor), r_max_(r_max), max_dim_(max_dim), dim_(cloud.dim()),
          solver_(cloud.dim())
    {
        fc_.info_ = {flavor, cloud.metric(), cloud.dim(), r_max, max_dim, cloud.size()};
        fc_.layers_.resize(static_cast<std::size_t>(max_dim) + 1);
    }

    FilteredComplex build()
    {
        const std::size_t n = cloud_.size();
        auto& vertices = fc_.layers_[0];
        vertices.verts.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            vertices.verts[i] = static_cast<Vertex>(i);
        vertices.values.assign(n, 0.0);

        auto pairs = neighbor_pairs(cloud_, r_max_);
        start_.assign(n + 1, 0);
        for (const auto& p : pairs)
            ++start_[p.i + 1];
        for (std::size_t i = 0; i < n; ++i)
            start_[i + 1] += start_[i];
        upper_.resize(pairs.size());
        auto& edges = fc_.layers_[1];
        edges.verts.reserve(2 * pairs.size());
        edges.values.reserve(pairs.size());
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            upper_[e] = pairs[e].j;
            edges.verts.push_back(pairs[e].i);
            edges.verts.push_back(pairs[e].j);
            edges.values.push_back(0.5 * pairs[e].distance);
        }

        if (max_dim_ >= 2) {
            std::vector<Vertex> simplex;
            for (std::size_t i = 0; i < n; ++i) {
                auto nbrs = neighbors(static_cast<Vertex>(i));
                for (std::size_t a = 0; a < nbrs.size(); ++a) {
                    Vertex j = nbrs[a];
                    simplex = {static_cast<Vertex>(i), j};
                    std::vector<Vertex> cand;
                    intersect(nbrs.subspan(a + 1), neighbors(j), cand);
                    expand(simplex, 0.5 * pairs[start_[i] + a].distance, 0, 1, cand);
                }
            }
        }
        // Dimensions with no simplices are dropped so top_dim() is exact.
        while (fc_.layers_.size() > 1 && fc_.layers_.back().values.empty())
            fc_.layers_.pop_back();
        if (n == 0)
            fc_.layers_.clear();
        if (flavor_ == Flavor::Cech) {
            fc_.build_lookup();  // find_local needs it before the order exists
            enforce_monotone();
        }
        fc_.finalize_order();
        return std::move(fc_);
    }

private:
    std::span<const Vertex> neighbors(Vertex v) const
    {
        return {upper_.data() + start_[v], start_[v + 1] - start_[v]};
    }

    static void intersect(std::span<const Vertex> a, std::span<const Vertex> b, std::vector<Vertex>& out)
    {
        out.clear();
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    }

    double pair_radius(Vertex a, Vertex b) const
    {
        return 0.5 * distance(cloud_.point(a), cloud_.point(b), cloud_.metric());
    }

    // Smallest enclosing ball radius of `simplex`, whose diameter is realized
    // by the vertices at slots (fa, fb) and equals 2 * rips_value. When every
    // vertex lies in the ball spanned by that diameter the answer is
    // rips_value itself and the Welzl solver is skipped.
    double enclosing_radius(const std::vector<Vertex>& simplex, std::size_t fa, std::size_t fb, double rips_value)
    {
        const auto w = static_cast<std::size_t>(dim_);
        coords_.resize(simplex.size() * w);
        auto anchor = cloud_.point(simplex[0]);
        for (std::size_t s = 0; s < simplex.size(); ++s) {
            auto p = cloud_.point(simplex[s]);
            for (std::size_t c = 0; c < w; ++c) {
                double x = p[c];
                if (cloud_.metric() == Metric::FlatTorus) {
                    double d = x - anchor[c];
                    x = anchor[c] + (d - std::round(d));
                }
                coords_[s * w + c] = x;
            }
        }
        const double bound = rips_value * rips_value * (1.0 + 2.0 * kBallTolerance);
        bool inside = true;
        for (std::size_t s = 0; s < simplex.size() && inside; ++s) {
            if (s == fa || s == fb)
                continue;
            double d2 = 0.0;
            for (std::size_t c = 0; c < w; ++c) {
                double mid = 0.5 * (coords_[fa * w + c] + coords_[fb * w + c]);
                double d = coords_[s * w + c] - mid;
                d2 += d * d;
            }
            inside = d2 <= bound;
        }
        if (inside)
            return rips_value;
        return solver_.solve(coords_, simplex.size());
    }

    // `simplex` is present with filtration value `rips_value` (half its
    // diameter, realized by slots fa, fb); `cand` are the common upper
    // neighbors of all its vertices.
    void expand(std::vector<Vertex>& simplex, double rips_value, std::size_t fa, std::size_t fb,
                const std::vector<Vertex>& cand)
    {
        const std::size_t next_dim = simplex.size();
        auto& layer = fc_.layers_[next_dim];
        std::vector<Vertex> next_cand;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            Vertex v = cand[a];
            double rv = rips_value;
            std::size_t na = fa;
            std::size_t nb = fb;
            for (std::size_t u = 0; u < simplex.size(); ++u) {
                double r = pair_radius(simplex[u], v);
                if (r > rv) {
                    rv = r;
                    na = u;
                    nb = simplex.size();
                }
            }
            simplex.push_back(v);
            double value = rv;
            if (flavor_ == Flavor::Cech) {
                value = std::max(rv, enclosing_radius(simplex, na, nb, rv));
                if (value > r_max_) {
                    simplex.pop_back();
                    continue;
                }
            }
            layer.verts.insert(layer.verts.end(), simplex.begin(), simplex.end());
            layer.values.push_back(value);
            if (static_cast<int>(next_dim) < max_dim_) {
                intersect(std::span<const Vertex>(cand).subspan(a + 1), neighbors(v), next_cand);
                if (!next_cand.empty())
                    expand(simplex, rv, na, nb, next_cand);
            }
            simplex.pop_back();
        }
    }

    // Lift each simplex to at least the value of its facets; enclosing-ball
    // radii are monotone only up to rounding.
    void enforce_monotone()
    {
        std::vector<Vertex> facet;
        for (std::size_t d = 3; d < fc_.layers_.size(); ++d) {
            auto& l = fc_.layers_[d];
            const auto& lower = fc_.layers_[d - 1];
            for (std::size_t s = 0; s < l.values.size(); ++s) {
                const Vertex* v = l.verts.data() + s * (d + 1);
                for (std::size_t skip = 0; skip <= d; ++skip) {
                    facet.clear();
                    for (std::size_t c = 0; c <= d; ++c) {
                        if (c != skip)
                            facet.push_back(v[c]);
                    }
                    auto f = fc_.find_local(facet);
                    if (f)
                        l.values[s] = std::max(l.values[s], lower.values[*f]);
                }
            }
        }
    }

    const PointCloud& cloud_;
    Flavor flavor_;
    double r_max_;
    int max_dim_;
    int dim_;
    MebSolver solver_;
    std::vector<double> coords_;
    std::vector<std::size_t> start_;
    std::vector<Vertex> upper_;
    FilteredComplex fc_;
};

namespace {

void check_build_args(const PointCloud& cloud, double r_max, int max_dim)
{
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw InvalidInput("radius cap must be positive and finite");
    if (max_dim < 1)
        throw InvalidInput("maximal simplex dimension must be at least 1");
    if (cloud.metric() == Metric::FlatTorus && r_max > kTorusMaxRadius)
        throw UnsupportedConfiguration("radius cap above 1/8 is not supported on the flat torus");
    if (cloud.size() > std::numeric_limits<std::uint32_t>::max())
        throw InvalidInput("too many points");
}

}  // namespace

FilteredComplex build_rips(const PointCloud& cloud, double r_max, int max_dim)
{
    check_build_args(cloud, r_max, max_dim);
    return ComplexBuilder(cloud, Flavor::Rips, r_max, max_dim).build();
}

FilteredComplex build_cech(const PointCloud& cloud, double r_max, int max_dim)
{
    check_build_args(cloud, r_max, max_dim);
    return ComplexBuilder(cloud, Flavor::Cech, r_max, max_dim).build();
}

FilteredComplex build_filtration(const PointCloud& cloud, Flavor flavor, double r_max, int max_dim)
{
    return flavor == Flavor::Cech ? build_cech(cloud, r_max, max_dim) : build_rips(cloud, r_max, max_dim);
}

double default_rmax(double n, int d, double c, Metric m)
{
    if (!(n > std::numbers::e))
        throw InvalidInput("intensity must exceed e");
    if (!(c > 0.0))
        throw InvalidInput("radius multiplier must be positive");
    if (d < 2)
        throw InvalidInput("dimension must be at least 2");
    double r = c * std::pow(std::log(n) / n, 1.0 / d);
    if (m == Metric::FlatTorus)
        r = std::min(r, kTorusMaxRadius);
    return r;
}

}  // namespace mpers
