#include "mpers/persistence.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <tuple>

#include "mpers/errors.hpp"
#include "text_util.hpp"

namespace mpers {

const std::vector<PersistencePair>& PersistenceDiagram::degree(int k) const
{
    static const std::vector<PersistencePair> none;
    if (k < 0 || k >= static_cast<int>(pairs.size()))
        return none;
    return pairs[static_cast<std::size_t>(k)];
}

std::size_t PersistenceDiagram::finite_count() const
{
    std::size_t c = 0;
    for (const auto& deg : pairs)
        c += static_cast<std::size_t>(std::count_if(deg.begin(), deg.end(), [](const auto& p) { return !p.essential(); }));
    return c;
}

std::size_t PersistenceDiagram::essential_count(int k) const
{
    const auto& deg = degree(k);
    return static_cast<std::size_t>(std::count_if(deg.begin(), deg.end(), [](const auto& p) { return p.essential(); }));
}

std::size_t PersistenceDiagram::essential_count() const
{
    std::size_t c = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        c += essential_count(static_cast<int>(k));
    return c;
}

void PersistenceDiagram::sort()
{
    auto less = [](const PersistencePair& a, const PersistencePair& b) {
        return std::tie(a.birth, a.death, a.birth_simplex) < std::tie(b.birth, b.death, b.birth_simplex);
    };
    for (auto& deg : pairs) {
        if (!std::is_sorted(deg.begin(), deg.end(), less))
            std::sort(deg.begin(), deg.end(), less);
    }
}

bool same_barcode(const PersistenceDiagram& a, const PersistenceDiagram& b)
{
    const std::size_t degrees = std::max(a.pairs.size(), b.pairs.size());
    for (std::size_t k = 0; k < degrees; ++k) {
        auto bars = [k](const PersistenceDiagram& d) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : d.degree(static_cast<int>(k)))
                out.emplace_back(p.birth, p.death);
            std::sort(out.begin(), out.end());
            return out;
        };
        if (bars(a) != bars(b))
            return false;
    }
    return true;
}

namespace {

using Index = std::uint32_t;

PersistenceDiagram empty_diagram(const FilteredComplex& fc)
{
    PersistenceDiagram diag;
    diag.info = fc.info();
    diag.n_simplices = fc.size();
    diag.pairs.resize(static_cast<std::size_t>(std::max(fc.top_dim() + 1, 0)));
    return diag;
}

void add_pair(PersistenceDiagram& diag, const FilteredComplex& fc, std::size_t birth_pos, std::size_t death_pos)
{
    const int k = fc.dim(birth_pos);
    PersistencePair p;
    p.degree = k;
    p.birth = fc.value(birth_pos);
    p.birth_simplex = birth_pos;
    if (death_pos != kNoSimplex) {
        p.death = fc.value(death_pos);
        p.death_simplex = death_pos;
    }
    diag.pairs[static_cast<std::size_t>(k)].push_back(p);
}

// Facet positions of the simplex at `pos`, each checked to exist and to
// precede it in the filtration order.
void facet_positions(const FilteredComplex& fc, std::size_t pos, std::vector<Vertex>& scratch,
                     std::vector<Index>& out)
{
    out.clear();
    auto v = fc.vertices(pos);
    if (v.size() < 2)
        return;
    for (std::size_t skip = 0; skip < v.size(); ++skip) {
        scratch.clear();
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (c != skip)
                scratch.push_back(v[c]);
        }
        auto f = fc.find(scratch);
        if (!f)
            throw InvalidInput("filtration is not closed under taking faces");
        if (*f >= pos)
            throw InvalidInput("filtration is not monotone: a face enters after its coface");
        out.push_back(static_cast<Index>(*f));
    }
}

// Symmetric difference of two ascending index lists.
void add_columns(const std::vector<Index>& a, std::span<const Index> b, std::vector<Index>& out)
{
    out.clear();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
}

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Index{0}); }

    Index find(Index x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    std::vector<Index> parent;
};

}  // namespace

PersistenceDiagram compute_persistence(const FilteredComplex& fc)
{
    PersistenceDiagram diag = empty_diagram(fc);
    const int top = fc.top_dim();
    if (top < 0)
        return diag;

    std::vector<Vertex> scratch;
    std::vector<Index> facets;

    // cleared[p][local]: p-simplex known to kill a (p-1)-class, so its
    // coboundary column reduces to zero and is skipped.
    std::vector<std::vector<bool>> cleared(static_cast<std::size_t>(top) + 1);
    for (int p = 0; p <= top; ++p)
        cleared[static_cast<std::size_t>(p)].assign(fc.count(p), false);

    // Degree 0: elder rule on a union-find whose roots are the oldest vertex.
    const std::size_t n_vertices = fc.count(0);
    {
        UnionFind uf(n_vertices);
        std::vector<Index> edges_by_pos;
        edges_by_pos.reserve(fc.count(1));
        for (std::size_t e = 0; e < fc.count(1); ++e)
            edges_by_pos.push_back(static_cast<Index>(fc.layer_position(1, e)));
        std::sort(edges_by_pos.begin(), edges_by_pos.end());
        std::vector<bool> dead(n_vertices, false);
        for (Index pos : edges_by_pos) {
            facet_positions(fc, pos, scratch, facets);
            Index a = uf.find(static_cast<Index>(fc.local_index(facets[0])));
            Index b = uf.find(static_cast<Index>(fc.local_index(facets[1])));
            if (a == b)
                continue;
            std::size_t pa = fc.layer_position(0, a);
            std::size_t pb = fc.layer_position(0, b);
            if (pa < pb) {
                std::swap(a, b);
                std::swap(pa, pb);
            }
            // b is the elder root; a dies here.
            add_pair(diag, fc, pa, pos);
            dead[a] = true;
            uf.parent[a] = b;
            cleared[1][fc.local_index(pos)] = true;
        }
        for (std::size_t v = 0; v < n_vertices; ++v) {
            if (!dead[v])
                add_pair(diag, fc, fc.layer_position(0, v), kNoSimplex);
        }
    }

    for (int p = 1; p <= top; ++p) {
        const auto up = static_cast<std::size_t>(p);
        const std::size_t n_cols = fc.count(p);
        if (p == top) {
            // Faces of the top layer were already checked while building the
            // coboundaries of the layer below (or by the union-find pass).
            std::vector<Index> essential;
            for (std::size_t s = 0; s < n_cols; ++s) {
                if (!cleared[up][s])
                    essential.push_back(static_cast<Index>(fc.layer_position(p, s)));
            }
            std::sort(essential.begin(), essential.end());
            diag.pairs[up].reserve(diag.pairs[up].size() + essential.size());
            for (Index pos : essential)
                add_pair(diag, fc, pos, kNoSimplex);
            break;
        }

        // Coboundaries of the p-simplices as ascending position lists (CSR).
        const std::size_t n_cofaces = fc.count(p + 1);
        std::vector<std::size_t> start(n_cols + 1, 0);
        std::vector<Index> coface_local_facets;
        coface_local_facets.reserve(n_cofaces * (up + 2));
        for (std::size_t s = 0; s < n_cofaces; ++s) {
            facet_positions(fc, fc.layer_position(p + 1, s), scratch, facets);
            for (Index f : facets) {
                auto local = static_cast<Index>(fc.local_index(f));
                coface_local_facets.push_back(local);
                ++start[local + 1];
            }
        }
        std::partial_sum(start.begin(), start.end(), start.begin());
        std::vector<Index> cofaces(coface_local_facets.size());
        {
            auto fill = start;
            std::size_t idx = 0;
            for (std::size_t s = 0; s < n_cofaces; ++s) {
                auto pos = static_cast<Index>(fc.layer_position(p + 1, s));
                for (std::size_t f = 0; f < up + 2; ++f)
                    cofaces[fill[coface_local_facets[idx++]]++] = pos;
            }
        }
        coface_local_facets = {};
        for (std::size_t s = 0; s < n_cols; ++s)
            std::sort(cofaces.begin() + static_cast<std::ptrdiff_t>(start[s]),
                      cofaces.begin() + static_cast<std::ptrdiff_t>(start[s + 1]));

        std::vector<Index> columns_by_pos;
        columns_by_pos.reserve(n_cols);
        for (std::size_t s = 0; s < n_cols; ++s)
            columns_by_pos.push_back(static_cast<Index>(fc.layer_position(p, s)));
        std::sort(columns_by_pos.begin(), columns_by_pos.end(), std::greater<>());

        // Reduced columns live in one pool; owner[local coface] points at the
        // column whose pivot it is.
        constexpr std::size_t kNone = static_cast<std::size_t>(-1);
        std::vector<std::size_t> owner(n_cofaces, kNone);
        std::vector<Index> pool;
        std::vector<std::pair<std::size_t, std::size_t>> stored;
        std::vector<Index> work;
        std::vector<Index> tmp;

        for (Index pos : columns_by_pos) {
            const std::size_t s = fc.local_index(pos);
            if (cleared[up][s])
                continue;
            work.assign(cofaces.begin() + static_cast<std::ptrdiff_t>(start[s]),
                        cofaces.begin() + static_cast<std::ptrdiff_t>(start[s + 1]));
            while (!work.empty()) {
                std::size_t o = owner[fc.local_index(work.front())];
                if (o == kNone)
                    break;
                auto [off, len] = stored[o];
                add_columns(work, std::span<const Index>(pool.data() + off, len), tmp);
                work.swap(tmp);
            }
            if (work.empty()) {
                add_pair(diag, fc, pos, kNoSimplex);
                continue;
            }
            const Index pivot = work.front();
            add_pair(diag, fc, pos, pivot);
            owner[fc.local_index(pivot)] = stored.size();
            stored.emplace_back(pool.size(), work.size());
            pool.insert(pool.end(), work.begin(), work.end());
            cleared[up + 1][fc.local_index(pivot)] = true;
        }
    }

    diag.sort();
    return diag;
}

PersistenceDiagram compute_persistence_naive(const FilteredComplex& fc)
{
    PersistenceDiagram diag = empty_diagram(fc);
    const std::size_t n = fc.size();
    std::vector<std::vector<Index>> reduced(n);
    std::vector<std::size_t> low_owner(n, kNoSimplex);
    std::vector<Vertex> scratch;
    std::vector<Index> col;
    std::vector<Index> tmp;

    for (std::size_t j = 0; j < n; ++j) {
        facet_positions(fc, j, scratch, col);
        std::sort(col.begin(), col.end());
        while (!col.empty() && low_owner[col.back()] != kNoSimplex) {
            add_columns(col, reduced[low_owner[col.back()]], tmp);
            col.swap(tmp);
        }
        if (!col.empty()) {
            low_owner[col.back()] = j;
            reduced[j] = col;
            add_pair(diag, fc, col.back(), j);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (reduced[j].empty() && low_owner[j] == kNoSimplex)
            add_pair(diag, fc, j, kNoSimplex);
    }
    diag.sort();
    return diag;
}

bool truncation_check(const PersistenceDiagram& diag, int k)
{
    if (k < 0)
        throw InvalidInput("homology degree must be non-negative");
    std::size_t expected = 0;
    if (diag.info.metric == Metric::FlatTorus) {
        // Betti numbers of the d-torus: C(d, k).
        const int d = diag.info.ambient_dim;
        double c = 1.0;
        for (int i = 1; i <= k; ++i)
            c = c * (d - k + i) / i;
        expected = k > d ? 0 : static_cast<std::size_t>(c + 0.5);
    } else {
        expected = k == 0 ? 1 : 0;
    }
    return diag.essential_count(k) > expected;
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diag)
{
    out << "degree,birth,death,birth_simplex,death_simplex\n";
    for (std::size_t k = 0; k < diag.pairs.size(); ++k) {
        auto rows = diag.pairs[k];
        std::stable_sort(rows.begin(), rows.end(), [](const PersistencePair& a, const PersistencePair& b) {
            return std::tie(a.birth, a.death) < std::tie(b.birth, b.death);
        });
        for (const auto& p : rows) {
            out << k << ',' << detail::format_double(p.birth) << ','
                << (p.essential() ? std::string("inf") : detail::format_double(p.death)) << ','
                << p.birth_simplex << ',';
            if (!p.essential())
                out << p.death_simplex;
            out << '\n';
        }
    }
}

void write_diagram_csv(const std::string& path, const PersistenceDiagram& diag)
{
    std::ofstream out(path);
    if (!out)
        throw IoError(path, "cannot open for writing");
    write_diagram_csv(out, diag);
    if (!out)
        throw IoError(path, "write failed");
}

PersistenceDiagram read_diagram_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != "degree,birth,death,birth_simplex,death_simplex")
        throw InvalidInput("missing diagram CSV header");
    PersistenceDiagram diag;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty())
            continue;
        auto f = detail::split(line, ',');
        if (f.size() != 5)
            throw InvalidInput("diagram row needs 5 fields: '" + line + "'");
        PersistencePair p;
        p.degree = detail::parse_int<int>(f[0]);
        if (p.degree < 0)
            throw InvalidInput("negative degree in diagram");
        p.birth = detail::parse_double(f[1]);
        p.death = detail::parse_double(f[2]);
        p.birth_simplex = detail::parse_int<std::size_t>(f[3]);
        p.death_simplex = f[4].empty() ? kNoSimplex : detail::parse_int<std::size_t>(f[4]);
        if (!(p.birth <= p.death))
            throw InvalidInput("diagram pair with birth after death");
        if (static_cast<std::size_t>(p.degree) >= diag.pairs.size())
            diag.pairs.resize(static_cast<std::size_t>(p.degree) + 1);
        diag.pairs[static_cast<std::size_t>(p.degree)].push_back(p);
    }
    diag.sort();
    return diag;
}

PersistenceDiagram read_diagram_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path, "cannot open for reading");
    return read_diagram_csv(in);
}

}  // namespace mpers
