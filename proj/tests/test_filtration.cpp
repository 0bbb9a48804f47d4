#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "mpers/errors.hpp"
#include "mpers/filtration.hpp"
#include "mpers/sampling.hpp"
#include "oracles.hpp"

using namespace mpers;

namespace {

const double kHalfDiag = std::sqrt(2.0) / 2;

std::size_t count_with(const FilteredComplex& fc, int dim, double value)
{
    std::size_t c = 0;
    for (std::size_t p = 0; p < fc.size(); ++p)
        c += fc.dim(p) == dim && std::abs(fc.value(p) - value) < 1e-12;
    return c;
}

}  // namespace

TEST_SUITE("filtration")
{
    TEST_CASE("rips equilateral triangle")
    {
        auto c = fixtures::cloud(2, Metric::CubeEuclidean, {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
        auto fc = build_rips(c, 1.0, 2);
        CHECK(fc.size() == 7);
        CHECK(count_with(fc, 0, 0.0) == 3);
        CHECK(count_with(fc, 1, 0.5) == 3);
        CHECK(count_with(fc, 2, 0.5) == 1);
    }

    TEST_CASE("rips and cech on the unit square")
    {
        auto sq = fixtures::unit_square();
        auto rips = build_rips(sq, 1.0, 2);
        CHECK(count_with(rips, 1, 0.5) == 4);
        CHECK(count_with(rips, 1, kHalfDiag) == 2);
        CHECK(count_with(rips, 2, kHalfDiag) == 4);
        CHECK(rips.count(2) == 4);

        auto cech = build_cech(sq, 1.0, 3);
        CHECK(count_with(cech, 1, 0.5) == 4);
        CHECK(count_with(cech, 1, kHalfDiag) == 2);
        CHECK(count_with(cech, 2, kHalfDiag) == 4);
        CHECK(count_with(cech, 3, kHalfDiag) == 1);
        CHECK(oracle::simplices_of(cech).size() == oracle::brute_complex(sq, Flavor::Cech, 1.0, 3).size());
    }

    TEST_CASE("single point")
    {
        auto c = fixtures::cloud(2, Metric::CubeEuclidean, {{0.3, 0.3}});
        for (Flavor f : {Flavor::Cech, Flavor::Rips}) {
            auto fc = build_filtration(c, f, 0.1, 2);
            REQUIRE(fc.size() == 1);
            CHECK(fc.value(0) == 0.0);
            CHECK(fc.top_dim() == 0);
        }
    }

    TEST_CASE("complexes equal brute-force subset enumeration")
    {
        for (std::uint64_t s = 0; s < 80; ++s) {
            auto eng = RngStream{20, s}.engine();
            const int d = 2 + static_cast<int>(eng() % 2);
            const Metric m = s % 2 ? Metric::FlatTorus : Metric::CubeEuclidean;
            const Flavor f = (s / 2) % 2 ? Flavor::Rips : Flavor::Cech;
            const std::size_t n = 3 + eng() % 10;
            auto cloud = sample_fixed(n, d, m, {21, s});
            const double r = m == Metric::FlatTorus ? 0.05 + 0.075 * uniform01(eng) : 0.1 + 0.4 * uniform01(eng);
            const int max_dim = 1 + static_cast<int>(eng() % 3);
            auto got = oracle::simplices_of(build_filtration(cloud, f, r, max_dim));
            auto want = oracle::brute_complex(cloud, f, r, max_dim);
            CAPTURE(s);
            REQUIRE(got.size() == want.size());
            for (const auto& [v, val] : want) {
                auto it = got.find(v);
                REQUIRE(it != got.end());
                CHECK(it->second == doctest::Approx(val).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("cech values are sandwiched by rips values")
    {
        for (std::uint64_t s = 0; s < 100; ++s) {
            auto eng = RngStream{22, s}.engine();
            const int d = 2 + static_cast<int>(eng() % 2);
            const Metric m = s % 3 == 0 ? Metric::FlatTorus : Metric::CubeEuclidean;
            auto cloud = sample_fixed(10 + eng() % 60, d, m, {23, s});
            const double r = m == Metric::FlatTorus ? 0.12 : 0.25;
            auto cech = build_cech(cloud, r, 3);
            auto rips = build_rips(cloud, r, 3);
            for (std::size_t p = 0; p < cech.size(); ++p) {
                auto q = rips.find(cech.vertices(p));
                REQUIRE(q.has_value());
                double rv = rips.value(*q);
                CHECK(rv <= cech.value(p) * (1 + 1e-12));
                CHECK(cech.value(p) <= 2 * rv * (1 + 1e-12));
            }
            // shared 1-skeleton with identical values
            REQUIRE(cech.count(0) == rips.count(0));
            REQUIRE(cech.count(1) == rips.count(1));
            for (std::size_t e = 0; e < cech.count(1); ++e) {
                auto q = rips.find(cech.layer_vertices(1, e));
                REQUIRE(q.has_value());
                CHECK(rips.value(*q) == cech.value(cech.layer_position(1, e)));
            }
        }
    }

    TEST_CASE("scaling the cloud scales every value")
    {
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto cloud = sample_fixed(60, 2 + static_cast<int>(s % 2), Metric::CubeEuclidean, {24, s});
            for (Flavor f : {Flavor::Cech, Flavor::Rips}) {
                auto base = build_filtration(cloud, f, 0.2, 2);
                for (double c : {0.5, 0.9}) {
                    auto sc = build_filtration(cloud.scaled(c), f, 0.2 * c, 2);
                    REQUIRE(sc.size() == base.size());
                    for (std::size_t p = 0; p < base.size(); ++p) {
                        auto q = sc.find(base.vertices(p));
                        REQUIRE(q.has_value());
                        CHECK(std::abs(sc.value(*q) - c * base.value(p)) <= 1e-12);
                    }
                }
            }
        }
    }

    TEST_CASE("total order is by value, then dimension, then vertices")
    {
        auto cloud = sample_fixed(80, 2, Metric::CubeEuclidean, {25, 0});
        auto fc = build_cech(cloud, 0.15, 2);
        for (std::size_t p = 1; p < fc.size(); ++p) {
            bool ordered = fc.value(p - 1) < fc.value(p) ||
                           (fc.value(p - 1) == fc.value(p) &&
                            (fc.dim(p - 1) < fc.dim(p) ||
                             (fc.dim(p - 1) == fc.dim(p) &&
                              std::lexicographical_compare(fc.vertices(p - 1).begin(), fc.vertices(p - 1).end(),
                                                           fc.vertices(p).begin(), fc.vertices(p).end()))));
            CHECK(ordered);
        }
        CHECK(fc == build_cech(cloud, 0.15, 2));
    }

    TEST_CASE("default radius cap")
    {
        CHECK(default_rmax(1e4, 2, 3.0) == doctest::Approx(3 * std::sqrt(std::log(1e4) / 1e4)).epsilon(1e-12));
        CHECK(default_rmax(1e4, 2, 3.0) == doctest::Approx(0.09105).epsilon(1e-4));
        CHECK(default_rmax(1e4, 3, 3.0) == doctest::Approx(0.2918).epsilon(1e-3));
        CHECK(default_rmax(1e4, 3, 3.0, Metric::FlatTorus) == 0.125);
        CHECK_THROWS_AS(default_rmax(1e4, 2, 0.0), InvalidInput);
        CHECK_THROWS_AS(default_rmax(2.0, 2, 3.0), InvalidInput);
    }

    TEST_CASE("build preconditions")
    {
        auto c = sample_fixed(10, 2, Metric::FlatTorus, {26, 0});
        CHECK_THROWS_AS(build_rips(c, 0.2, 2), UnsupportedConfiguration);
        CHECK_THROWS_AS(build_cech(c, 0.0, 2), InvalidInput);
        CHECK_THROWS_AS(build_cech(c, 0.1, 0), InvalidInput);
        CHECK_NOTHROW(build_cech(c, 0.125, 2));
    }

    TEST_CASE("explicit simplex lists and text export")
    {
        FilteredComplex::Info info;
        auto fc = FilteredComplex::from_simplices({{{0}, 0.0}, {{1}, 0.0}, {{1, 0}, 0.25}}, info);
        CHECK(fc.size() == 3);
        std::ostringstream s;
        fc.write_text(s);
        CHECK(s.str() == "0 0 0\n0 0 1\n0.25 1 0 1\n");
        CHECK_THROWS_AS(FilteredComplex::from_simplices({{{0}, 0.5}}, info), InvalidInput);
        CHECK_THROWS_AS(FilteredComplex::from_simplices({{{0, 0}, 0.5}}, info), InvalidInput);
        CHECK_THROWS_AS(FilteredComplex::from_simplices({{{0}, 0.0}, {{0}, 0.0}}, info), InvalidInput);
        CHECK_THROWS_AS(FilteredComplex::from_simplices({{{0}, 0.0}, {{0, 1}, -1.0}}, info), InvalidInput);
    }
}
