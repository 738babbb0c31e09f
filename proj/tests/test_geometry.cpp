#include "recteig/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

using namespace recteig;

namespace {

// Distance from p to the L-shape's six-edge polyline.
double lshape_polyline_distance(Point2 p)
{
    const Point2 v[] = {{0, 0}, {1, 0}, {1, -1}, {-1, -1}, {-1, 1}, {0, 1}, {0, 0}};
    double best = 1e300;
    for (int k = 0; k < 6; ++k) {
        const double ax = v[k].x, ay = v[k].y, bx = v[k + 1].x, by = v[k + 1].y;
        const double t = std::clamp(((p.x - ax) * (bx - ax) + (p.y - ay) * (by - ay)) /
                                        ((bx - ax) * (bx - ax) + (by - ay) * (by - ay)),
                                    0.0, 1.0);
        best = std::min(best, std::hypot(p.x - ax - t * (bx - ax), p.y - ay - t * (by - ay)));
    }
    return best;
}

}  // namespace

TEST_CASE("equispaced_interval endpoints and spacing")
{
    const auto two = equispaced_interval(-1, 1, 2);
    CHECK(two.points == std::vector<double>{-1.0, 1.0});

    const auto p = equispaced_interval(-1, 1, 200);
    REQUIRE(p.size() == 200);
    CHECK(p.points.front() == -1.0);
    CHECK(p.points.back() == 1.0);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p.points[i] - p.points[i - 1] == doctest::Approx(2.0 / 199));

    CHECK(equispaced_interval(-8, 8, 100).size() == 100);
    CHECK_THROWS_AS(equispaced_interval(-1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(equispaced_interval(1, -1, 5), std::invalid_argument);
}

TEST_CASE("exp_clustered_interval")
{
    const auto p = exp_clustered_interval(1e-10, 1, 3000, true);
    REQUIRE(p.size() == 6000);
    const auto pos = std::find_if(p.points.begin(), p.points.end(), [](double v) { return v > 0; });
    CHECK(*pos == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(p.points.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::is_sorted(p.points.begin(), p.points.end()));

    const auto short_set = exp_clustered_interval(0.1, 1, 2, false);
    REQUIRE(short_set.size() == 2);
    CHECK(short_set.points[0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(short_set.points[1] == doctest::Approx(1.0).epsilon(1e-15));

    const auto half = exp_clustered_interval(1e-4, 1, 50, false);
    const double ratio = std::pow(1e4, 1.0 / 49);
    for (std::size_t i = 1; i < half.size(); ++i) CHECK(half.points[i] / half.points[i - 1] == doctest::Approx(ratio));

    CHECK_THROWS_AS(exp_clustered_interval(0, 1, 10, true), std::invalid_argument);
}

TEST_CASE("grid_in_domain counts")
{
    CHECK(grid_in_domain(Disk{1}, 0.05).size() == 1245);
    CHECK(grid_in_domain(Disk{1}, 0.04).size() == 1941);
    CHECK(grid_in_domain(Disk{1.25}, 0.08).size() == 769);
    CHECK(grid_in_domain(LShape{}, 0.05).size() == 1121);

    const auto origin = grid_in_domain(Disk{1}, 1.5);
    REQUIRE(origin.size() == 1);
    CHECK(origin.points[0].x == 0.0);
    CHECK(origin.points[0].y == 0.0);

    CHECK_THROWS_AS(grid_in_domain(Disk{1}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(grid_in_domain(Interval{}, 0.1), std::invalid_argument);
}

TEST_CASE("boundary_equispaced on the disk")
{
    const auto b = boundary_equispaced(Disk{1}, 4);
    REQUIRE(b.size() == 4);
    CHECK(b.role == PointRole::boundary);
    const double expect[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int k = 0; k < 4; ++k) {
        CHECK(b.points[k].x == doctest::Approx(expect[k][0]).epsilon(1e-15));
        CHECK(std::abs(b.points[k].y - expect[k][1]) <= 1e-15);
    }
    CHECK(boundary_equispaced(Disk{1}, 400).size() == 400);
    CHECK(boundary_equispaced(Disk{1}, 300).size() == 300);
    CHECK_THROWS_AS(boundary_equispaced(Disk{1}, 3), std::invalid_argument);
}

TEST_CASE("boundary_lshape_clustered")
{
    const auto b = boundary_lshape_clustered(420, 1e-8);
    REQUIRE(b.size() == 420);
    double rmin = 1e300;
    for (auto p : b.points) rmin = std::min(rmin, std::hypot(p.x, p.y));
    CHECK(rmin == doctest::Approx(1e-8).epsilon(1e-12));
    for (auto p : b.points) CHECK(lshape_polyline_distance(p) <= 1e-14);

    // Doubling the count doubles the points on each corner edge.
    auto on_corner_edges = [](const PointSet2D& s) {
        std::size_t n = 0;
        for (auto p : s.points)
            if ((p.y == 0 && p.x > 0 && p.x < 1) || (p.x == 0 && p.y > 0 && p.y < 1)) ++n;
        return n;
    };
    CHECK(on_corner_edges(boundary_lshape_clustered(800, 1e-8)) == 2 * on_corner_edges(boundary_lshape_clustered(400, 1e-8)));
}

TEST_CASE("write_csv headers")
{
    std::ostringstream a, b;
    write_csv(a, equispaced_interval(0, 1, 3));
    write_csv(b, boundary_equispaced(Disk{1}, 4));
    CHECK(a.str().rfind("x,role\n", 0) == 0);
    CHECK(b.str().rfind("x,y,role\n", 0) == 0);
}

TEST_CASE("domain validation")
{
    CHECK_THROWS_AS(validate(Interval{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Disk{-1}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Ellipse{1, 0}), std::invalid_argument);
    CHECK_NOTHROW(validate(LShape{}));
}

TEST_SUITE("properties")
{
    TEST_CASE("interior points satisfy the strict inequalities")
    {
        for (auto p : grid_in_domain(Disk{1}, 0.05).points) CHECK(p.x * p.x + p.y * p.y < 1.0);
        for (auto p : grid_in_domain(Ellipse{1, 0.5}, 0.04).points) CHECK(p.x * p.x + 4 * p.y * p.y < 1.0);
        for (auto p : grid_in_domain(LShape{}, 0.05).points) {
            CHECK(std::abs(p.x) < 1.0);
            CHECK(std::abs(p.y) < 1.0);
            CHECK(!(p.x >= 0 && p.y >= 0));
        }
    }

    TEST_CASE("boundary points lie on their curves")
    {
        for (auto p : boundary_equispaced(Disk{1}, 300).points) CHECK(std::abs(std::hypot(p.x, p.y) - 1) <= 1e-12);
        for (auto p : boundary_equispaced(Ellipse{1, 0.5}, 426).points)
            CHECK(std::abs(p.x * p.x + 4 * p.y * p.y - 1) <= 1e-12);
        for (auto p : boundary_equispaced(LShape{}, 300).points) CHECK(lshape_polyline_distance(p) <= 1e-12);
    }

    TEST_CASE("mirrored clustered sets are exactly symmetric")
    {
        for (std::size_t count : {2u, 17u, 3000u}) {
            const auto p = exp_clustered_interval(1e-10, 1, count, true);
            const std::set<double> s(p.points.begin(), p.points.end());
            REQUIRE(s.size() == 2 * count);
            for (double v : p.points) CHECK(s.count(-v) == 1);
        }
    }

    TEST_CASE("constructors are deterministic")
    {
        auto same = [](const PointSet2D& a, const PointSet2D& b) {
            return a.size() == b.size() && std::equal(a.points.begin(), a.points.end(), b.points.begin(),
                                                      [](Point2 p, Point2 q) { return p.x == q.x && p.y == q.y; });
        };
        CHECK(same(grid_in_domain(LShape{}, 0.05), grid_in_domain(LShape{}, 0.05)));
        CHECK(same(boundary_lshape_clustered(420, 1e-8), boundary_lshape_clustered(420, 1e-8)));
        CHECK(same(boundary_equispaced(Ellipse{1, 0.5}, 426), boundary_equispaced(Ellipse{1, 0.5}, 426)));
    }

    TEST_CASE("disk grids are symmetric about both axes")
    {
        const auto g = grid_in_domain(Disk{1}, 0.05);
        std::set<std::pair<long, long>> keys;
        for (auto p : g.points) keys.insert({std::lround(p.x / 0.05), std::lround(p.y / 0.05)});
        for (auto [i, j] : keys) {
            CHECK(keys.count({-i, j}) == 1);
            CHECK(keys.count({i, -j}) == 1);
        }
    }
}
