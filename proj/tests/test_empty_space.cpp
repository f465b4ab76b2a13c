#include <doctest.h>

#include "fixtures.hpp"
#include "topoprint/empty_space.hpp"
#include "topoprint/error.hpp"
#include "topoprint/slicing.hpp"

using namespace topoprint;

TEST_SUITE("empty_space") {
	TEST_CASE("occupancy is a cylinder of radius xy_res and height z_res") {
		const Point3 c{0, 0, 0};
		CHECK(occupies({0.1, 0, 0.25}, c, 0.1, 0.5));
		CHECK(occupies({0.06, 0.08, -0.25}, c, 0.1, 0.5));
		CHECK_FALSE(occupies({0.1, 0.01, 0}, c, 0.1, 0.5));
		CHECK_FALSE(occupies({0, 0, 0.26}, c, 0.1, 0.5));
	}

	TEST_CASE("grid geometry") {
		EmptySpaceOptions o;
		o.xy_res = 0.25;
		o.z_res = 0.5;
		o.margin_cells = 2;
		o.bounds = Box3{{0, 0, 0}, {1, 1, 1}};
		const OccupancyGrid g = build_occupancy({}, o);
		CHECK(g.nx == 8);
		CHECK(g.ny == 8);
		CHECK(g.nz == 7);
		CHECK(g.origin.z == doctest::Approx(-1.0));
		CHECK(g.center(2, 2, 2).x == doctest::Approx(0.125));
		CHECK(g.center(2, 2, 2).z == doctest::Approx(0.0));
		CHECK(g.center(0, 0, 6).z == doctest::Approx(2.0));
		CHECK(g.on_shell(0, 3, 3));
		CHECK(g.on_shell(3, 3, 6));
		CHECK_FALSE(g.on_shell(1, 1, 1));
	}

	TEST_CASE("xy cells are centered on an extent that is not a multiple of the resolution") {
		EmptySpaceOptions o;
		o.xy_res = 0.4;
		o.z_res = 1;
		o.margin_cells = 1;
		o.bounds = Box3{{0, 0, 0}, {1, 1, 1}};
		const OccupancyGrid g = build_occupancy({}, o);
		REQUIRE(g.nx == 5);
		CHECK(g.center(0, 0, 0).x + g.center(4, 0, 0).x == doctest::Approx(1.0));
	}

	TEST_CASE("model points remove the cells they occupy") {
		PointCloud cloud;
		cloud.points = {{0.5, 0.5, 0.5}};
		EmptySpaceOptions o;
		o.xy_res = 0.25;
		o.z_res = 0.5;
		o.margin_cells = 1;
		o.bounds = Box3{{0, 0, 0}, {1, 1, 1}};
		const EmptySpace e = fill_empty_space(cloud, o);
		const OccupancyGrid& g = e.grid;
		std::size_t occupied = 0;
		for (auto v : g.occupied) occupied += v;
		// Cell centers at x, y in {0.375, 0.625} lie within 0.25 in xy (distance 0.177); the z level 0.5 is exact.
		CHECK(occupied == 4);
		CHECK(e.points.size() == g.cell_count() - 4);
		CHECK(e.on_shell.size() == e.points.size());
		for (std::size_t i = 1; i < e.points.size(); ++i) {
			const Point3& a = e.points.points[i - 1];
			const Point3& b = e.points.points[i];
			CHECK((a.z < b.z || (a.z == b.z && (a.y < b.y || (a.y == b.y && a.x < b.x)))));
		}
	}

	TEST_CASE("level assignment equals interval assignment over the level cover") {
		EmptySpaceOptions o;
		o.xy_res = 0.3;
		o.z_res = 0.37;
		o.margin_cells = 2;
		const EmptySpace e = fill_empty_space(fixtures::sphere_shell(2, 3000), o);
		const OccupancyGrid& g = e.grid;
		REQUIRE(e.level_offsets.size() == static_cast<std::size_t>(g.nz) + 1);
		const double top = g.origin.z + static_cast<double>(g.nz - 1) * g.z_res;
		for (double overlap : {0.0, 0.05, 0.3}) {
			const Cover c = build_cover({g.origin.z, top}, SliceCount{static_cast<int>(g.nz - 1)}, overlap);
			const SliceAssignment direct = level_assignment(e);
			const SliceAssignment tested = assign_points(e.points, c);
			CHECK(direct.members == tested.members);
			CHECK(direct.point_count == tested.point_count);
		}
	}

	TEST_CASE("cell budget and option checks") {
		EmptySpaceOptions o;
		o.xy_res = 0.001;
		o.z_res = 0.001;
		o.cell_budget = 1000;
		CHECK_THROWS_AS(fill_empty_space(fixtures::sphere_shell(1, 100), o), BudgetExceeded);
		o.xy_res = 0;
		CHECK_THROWS_AS(fill_empty_space(fixtures::sphere_shell(1, 100), o), ConfigError);
		CHECK_THROWS_AS(fill_empty_space({}, EmptySpaceOptions{}), ConfigError);
	}
}
