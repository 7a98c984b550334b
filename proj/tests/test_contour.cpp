#include <doctest.h>

#include "helpers.hpp"
#include "nri/analysis.hpp"
#include "nri/contour.hpp"

using testutil::synthetic_map;

TEST_CASE("paraboloid level set is a circle of the right radius") {
    const nri::GridSpec grid{0.5, 1.0, 0.5, 1.0, 201, 201};
    const auto map = synthetic_map(grid, [](double x, double y) {
        return (x - 0.75) * (x - 0.75) + (y - 0.75) * (y - 0.75);
    });
    const auto contours = nri::extract_contours(map, 0.01);
    REQUIRE(contours.size() == 1);
    const auto& c = contours[0];
    CHECK(c.closed);
    CHECK(c.points.size() >= 3);

    const double spacing = 0.5 / 200;
    for (const auto& pt : c.points) {
        const double r = std::hypot(pt[0] - 0.75, pt[1] - 0.75);
        CHECK(std::abs(r - 0.1) <= 2.0 * spacing);
    }
    const auto fit = nri::fit_circle(c);
    CHECK(fit.radius == doctest::Approx(0.1).epsilon(0.02));
    CHECK(std::abs(fit.center_x - 0.75) < spacing);
    CHECK(std::abs(fit.center_y - 0.75) < spacing);
}

TEST_CASE("constant fields yield no contours") {
    const nri::GridSpec grid{0.5, 1.0, 0.5, 1.0, 11, 11};
    const auto map = synthetic_map(grid, [](double, double) { return 1.0; });
    CHECK(nri::extract_contours(map, 0.5).empty());
    CHECK(nri::extract_contours(map, 2.0).empty());
}

TEST_CASE("a single interior minimum produces one minimal closed loop") {
    const nri::GridSpec grid{0.0, 1.0, 0.0, 1.0, 3, 3};
    auto map = synthetic_map(grid, [](double, double) { return 1.0; });
    map.samples[grid.index(1, 1)].medium.n = nri::complex{0.0, 0.0};
    const auto contours = nri::extract_contours(map, 0.5);
    REQUIRE(contours.size() == 1);
    CHECK(contours[0].closed);
    CHECK(contours[0].points.size() == 4);  // diamond around the center node
    CHECK(contours[0].points.front() != contours[0].points.back());
}

TEST_CASE("saddle cells split according to the cell average") {
    // Corners (0,0)=0, (1,0)=1, (1,1)=0, (0,1)=1 at level 0.5: the average
    // sits exactly at the level (not below), so the inside corners separate.
    const nri::GridSpec grid{0.0, 1.0, 0.0, 1.0, 2, 2};
    auto map = synthetic_map(grid, [](double, double) { return 0.0; });
    map.samples[grid.index(1, 0)].medium.n = nri::complex{1.0};
    map.samples[grid.index(0, 1)].medium.n = nri::complex{1.0};
    const auto contours = nri::extract_contours(map, 0.5);
    REQUIRE(contours.size() == 2);
    for (const auto& c : contours) {
        CHECK_FALSE(c.closed);
        CHECK(c.points.size() == 2);
    }
}

TEST_CASE("cells touching error-flagged samples are excluded") {
    const nri::GridSpec grid{0.5, 1.0, 0.5, 1.0, 201, 201};
    auto map = synthetic_map(grid, [](double x, double y) {
        return (x - 0.75) * (x - 0.75) + (y - 0.75) * (y - 0.75);
    });
    // Flag a vertical stripe through the right lobe of the circle.
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
            if (grid.x(i) >= 0.80 && grid.x(i) <= 0.90)
                map.samples[grid.index(i, j)].error = nri::ErrorKind::CMPole;
        }
    }
    const auto contours = nri::extract_contours(map, 0.01);
    REQUIRE_FALSE(contours.empty());
    std::size_t closed = 0;
    for (const auto& c : contours) {
        closed += c.closed ? 1 : 0;
        for (const auto& pt : c.points) CHECK(pt[0] < 0.80);
    }
    CHECK(closed == 0);  // the stripe cuts the only loop open
}

TEST_CASE("contour extraction rejects degenerate grids") {
    nri::FieldMap map;
    map.grid.nx = 1;
    map.grid.ny = 5;
    CHECK_THROWS_AS(nri::extract_contours(map, 0.0), nri::ConfigError);
}
