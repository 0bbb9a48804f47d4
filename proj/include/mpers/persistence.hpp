#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "mpers/filtration.hpp"

namespace mpers {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kNoSimplex = static_cast<std::size_t>(-1);

struct PersistencePair {
    int degree = 0;
    double birth = 0.0;
    double death = kInfinity;
    std::size_t birth_simplex = kNoSimplex;
    std::size_t death_simplex = kNoSimplex;

    bool essential() const noexcept { return death == kInfinity; }
    bool zero_length() const noexcept { return birth == death; }

    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Per-degree barcode over Z/2. Pairs within a degree are kept sorted by
/// (birth, death, birth_simplex).
struct PersistenceDiagram {
    std::vector<std::vector<PersistencePair>> pairs;  ///< indexed by degree
    std::size_t n_simplices = 0;
    FilteredComplex::Info info;

    const std::vector<PersistencePair>& degree(int k) const;
    std::size_t finite_count() const;
    std::size_t essential_count() const;
    std::size_t essential_count(int k) const;

    void sort();
};

/// Identity used by the engine cross-check: same multiset of
/// (degree, birth, death) per degree.
bool same_barcode(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Cohomology reduction with clearing, lowest degree first: components by
/// union-find, then the coboundary columns of each degree in reverse
/// filtration order, skipping columns already known to be zero.
PersistenceDiagram compute_persistence(const FilteredComplex& fc);

/// Textbook left-to-right reduction of the full boundary matrix.
PersistenceDiagram compute_persistence_naive(const FilteredComplex& fc);

/// True if a degree-k class is still alive at the radius cap beyond what the
/// ambient space explains: any essential class in the cube (other than the
/// single component in degree 0), more than C(d,k) on the flat torus.
bool truncation_check(const PersistenceDiagram& diag, int k);

/// Diagram CSV: `degree,birth,death,birth_simplex,death_simplex`, rows
/// sorted by (degree, birth, death), essential deaths written as `inf`.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& diag);
void write_diagram_csv(const std::string& path, const PersistenceDiagram& diag);
PersistenceDiagram read_diagram_csv(std::istream& in);
PersistenceDiagram read_diagram_csv(const std::string& path);

}  // namespace mpers
