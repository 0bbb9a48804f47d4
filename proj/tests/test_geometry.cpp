#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "mpers/errors.hpp"
#include "mpers/geometry.hpp"
#include "mpers/sampling.hpp"
#include "oracles.hpp"

using namespace mpers;

TEST_SUITE("geometry")
{
    TEST_CASE("distance examples")
    {
        std::vector<double> a{0.1, 0.1}, b{0.9, 0.1};
        CHECK(distance(a, b, Metric::FlatTorus) == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(distance(a, b, Metric::CubeEuclidean) == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(distance(a, a, Metric::CubeEuclidean) == 0.0);
        CHECK(distance(a, a, Metric::FlatTorus) == 0.0);
        std::vector<double> c{0.1, 0.1, 0.1};
        CHECK_THROWS_AS(distance(a, c, Metric::CubeEuclidean), InvalidInput);
    }

    TEST_CASE("torus distance never exceeds cube distance and is symmetric")
    {
        auto eng = RngStream{5, 0}.engine();
        for (int i = 0; i < 2000; ++i) {
            std::vector<double> a{uniform01(eng), uniform01(eng), uniform01(eng)};
            std::vector<double> b{uniform01(eng), uniform01(eng), uniform01(eng)};
            double t = distance(a, b, Metric::FlatTorus);
            CHECK(t <= distance(a, b, Metric::CubeEuclidean));
            CHECK(t == distance(b, a, Metric::FlatTorus));
            CHECK(t == doctest::Approx(oracle::dist(a, b, Metric::FlatTorus)).epsilon(1e-14));
        }
    }

    TEST_CASE("triangle inequality on random triples")
    {
        auto eng = RngStream{6, 0}.engine();
        for (Metric m : {Metric::CubeEuclidean, Metric::FlatTorus}) {
            int bad = 0;
            for (int i = 0; i < 10000; ++i) {
                const int d = 2 + static_cast<int>(eng() % 3);
                std::vector<double> a(d), b(d), c(d);
                for (int j = 0; j < d; ++j) {
                    a[j] = uniform01(eng);
                    b[j] = uniform01(eng);
                    c[j] = uniform01(eng);
                }
                if (distance(a, c, m) > distance(a, b, m) + distance(b, c, m) + 1e-12)
                    ++bad;
            }
            CHECK(bad == 0);
        }
    }

    TEST_CASE("neighbor pairs boundary cases")
    {
        auto c = fixtures::cloud(2, Metric::CubeEuclidean, {{0, 0}, {1, 0}});
        CHECK(neighbor_pairs(c, 0.4).empty());
        auto p = neighbor_pairs(c, 0.5);
        REQUIRE(p.size() == 1);
        CHECK(p[0].i == 0);
        CHECK(p[0].j == 1);
        CHECK(p[0].distance == 1.0);
        CHECK_THROWS_AS(neighbor_pairs(c, 0.0), InvalidInput);
    }

    TEST_CASE("neighbor pairs match the brute-force double loop")
    {
        for (std::uint64_t s = 0; s < 60; ++s) {
            auto eng = RngStream{7, s}.engine();
            const int d = 2 + static_cast<int>(s % 3);
            const Metric m = s % 2 ? Metric::FlatTorus : Metric::CubeEuclidean;
            const std::size_t n = s < 20 ? 10 : 50 + eng() % 400;
            auto cloud = sample_fixed(n, d, m, {8, s});
            const double r = 0.01 + 0.2 * uniform01(eng);
            auto got = neighbor_pairs(cloud, r);
            auto want = oracle::brute_pairs(cloud, r);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].i == want[i].i);
                CHECK(got[i].j == want[i].j);
                CHECK(got[i].distance == doctest::Approx(want[i].d).epsilon(1e-14));
            }
        }
    }

    TEST_CASE("enclosing ball examples")
    {
        std::vector<Point> two{{0, 0}, {1, 0}};
        auto b = min_enclosing_ball(two, Metric::CubeEuclidean);
        CHECK(b.radius == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(b.center[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(b.center[1]) < 1e-12);

        std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
        b = min_enclosing_ball(tri, Metric::CubeEuclidean);
        CHECK(b.radius == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
        CHECK(b.radius == doctest::Approx(oracle::grid_meb_2d(tri)).epsilon(1e-9));

        std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        b = min_enclosing_ball(sq, Metric::CubeEuclidean);
        CHECK(b.radius == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
        CHECK(b.center[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(b.center[1] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(b.radius == doctest::Approx(oracle::grid_meb_2d(sq)).epsilon(1e-9));
    }

    TEST_CASE("enclosing ball errors")
    {
        std::vector<Point> none;
        CHECK_THROWS_AS(min_enclosing_ball(none, Metric::CubeEuclidean), InvalidInput);
        std::vector<Point> wide{{0.1, 0.1}, {0.4, 0.1}};
        CHECK_THROWS_AS(min_enclosing_ball(wide, Metric::FlatTorus), UnsupportedConfiguration);
    }

    TEST_CASE("torus enclosing ball unwraps across the seam")
    {
        std::vector<Point> pts{{0.98, 0.5}, {0.04, 0.5}, {0.01, 0.55}};
        auto b = min_enclosing_ball(pts, Metric::FlatTorus);
        std::vector<Point> shifted{{-0.02, 0.5}, {0.04, 0.5}, {0.01, 0.55}};
        CHECK(b.radius == doctest::Approx(oracle::brute_meb(shifted)).epsilon(1e-12));
    }

    TEST_CASE("enclosing ball agrees with subset enumeration")
    {
        for (std::uint64_t s = 0; s < 300; ++s) {
            auto eng = RngStream{9, s}.engine();
            const int d = 2 + static_cast<int>(eng() % 3);
            const std::size_t n = 1 + eng() % 10;
            std::vector<Point> pts(n, Point(d));
            for (auto& p : pts)
                for (auto& x : p)
                    x = uniform01(eng);
            auto b = min_enclosing_ball(pts, Metric::CubeEuclidean);
            CHECK(b.radius == doctest::Approx(oracle::brute_meb(pts)).epsilon(1e-9));
            for (const auto& p : pts)
                CHECK(b.contains(p));
        }
    }

    TEST_CASE("enclosing ball radius lies between half the diameter and the diameter")
    {
        for (std::uint64_t s = 0; s < 500; ++s) {
            auto eng = RngStream{10, s}.engine();
            const int d = 2 + static_cast<int>(eng() % 3);
            const std::size_t n = 2 + eng() % 9;
            std::vector<Point> pts(n, Point(d));
            for (auto& p : pts)
                for (auto& x : p)
                    x = uniform01(eng);
            double diam = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    diam = std::max(diam, oracle::dist(pts[i], pts[j], Metric::CubeEuclidean));
            double r = min_enclosing_ball(pts, Metric::CubeEuclidean).radius;
            CHECK(r >= diam / 2 * (1 - 1e-12));
            CHECK(r <= diam);
        }
    }

    TEST_CASE("enclosing ball radius is permutation invariant")
    {
        for (std::uint64_t s = 0; s < 100; ++s) {
            auto eng = RngStream{12, s}.engine();
            const int d = 2 + static_cast<int>(eng() % 3);
            std::vector<Point> pts(8, Point(d));
            for (auto& p : pts)
                for (auto& x : p)
                    x = uniform01(eng);
            double r0 = min_enclosing_ball(pts, Metric::CubeEuclidean).radius;
            for (int k = 0; k < 5; ++k) {
                std::shuffle(pts.begin(), pts.end(), eng);
                CHECK(min_enclosing_ball(pts, Metric::CubeEuclidean).radius == doctest::Approx(r0).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("greedy epsilon net examples")
    {
        auto line = fixtures::cloud(2, Metric::CubeEuclidean, {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}});
        CHECK(epsilon_net(line, 0.6) == std::vector<std::size_t>{0, 2});
        CHECK(epsilon_net(line, 2.0) == std::vector<std::size_t>{0});
        CHECK(epsilon_net(line, 0.5) == std::vector<std::size_t>{0, 1, 2});
        CHECK_THROWS_AS(epsilon_net(line, 0.0), InvalidInput);
    }
}
