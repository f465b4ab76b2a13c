#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "topoprint/components.hpp"
#include "topoprint/error.hpp"
#include "topoprint/persistence.hpp"

using namespace topoprint;

namespace {

std::vector<PersistenceInterval> all_pairs(std::span<const Point2> pts, double max_scale,
                                           ReductionMode mode = ReductionMode::Clearing) {
	const Filtration f = rips_filtration(pts, max_scale);
	return persistence_pairs(f, reduce_boundary_matrix(f, mode));
}

std::size_t count_dim(const Filtration& f, int d) {
	std::size_t n = 0;
	for (const auto& s : f.simplices) n += s.dimension == d;
	return n;
}

} // namespace

TEST_SUITE("persistence") {
	TEST_CASE("unit square filtration and its single H1 interval") {
		const auto sq = fixtures::unit_square();
		const Filtration f = rips_filtration(sq, 2.0);
		CHECK(count_dim(f, 0) == 4);
		CHECK(count_dim(f, 1) == 6);
		CHECK(count_dim(f, 2) == 4);
		for (std::uint32_t v = 0; v < 4; ++v) CHECK(f.simplices[v].vertices[0] == v);

		const auto h1 = h1_intervals(sq, 2.0);
		REQUIRE(h1.size() == 1);
		CHECK(std::abs(h1[0].birth - 1.0) <= 1e-9);
		CHECK(std::abs(h1[0].death - std::sqrt(2.0)) <= 1e-9);
		CHECK(holes_at_scale(h1, 1.2) == 1);
		CHECK(holes_at_scale(h1, 1.5) == 0);
		CHECK(holes_at_scale(h1, 0.9) == 0);
	}

	TEST_CASE("three points never form a hole") {
		const std::vector<Point2> tri = {{0, 0}, {1, 0}, {0.5, 0.8}};
		CHECK(h1_intervals(tri, 5.0).empty());
	}

	TEST_CASE("12-point circle has exactly one positive-persistence H1 class") {
		const auto c = fixtures::circle(12, 1.0);
		const auto h1 = h1_intervals(c, 3.0);
		std::size_t positive = 0;
		for (const auto& iv : h1) positive += iv.persistence() > 0;
		CHECK(positive == 1);
		REQUIRE(h1.size() == 1);
		CHECK(h1[0].birth == doctest::Approx(2 * std::sin(M_PI / 12)));
		CHECK(h1[0].death == doctest::Approx(std::sqrt(3.0)));
	}

	TEST_CASE("classes alive at the truncation scale get infinite death") {
		const auto c = fixtures::circle(12, 1.0);
		const auto h1 = h1_intervals(c, 1.0);
		REQUIRE(h1.size() == 1);
		CHECK(h1[0].infinite());
		CHECK(diagram_to_json(h1).find("null") != std::string::npos);
	}

	TEST_CASE("H0: one infinite class per component at the truncation scale") {
		std::vector<Point2> pts = fixtures::circle(12, 1.0);
		pts.push_back({10, 10});
		std::size_t infinite = 0;
		for (const auto& iv : all_pairs(pts, 1.0))
			if (iv.dimension == 0 && iv.infinite()) ++infinite;
		CHECK(infinite == 2);
	}

	TEST_CASE("small filtrations") {
		const std::vector<Point2> tri = {{0, 0}, {1, 0}, {0.5, 0.8}};
		const Filtration f = rips_filtration(tri, 2.0);
		CHECK(count_dim(f, 0) == 3);
		CHECK(count_dim(f, 1) == 3);
		CHECK(count_dim(f, 2) == 1);
		const std::vector<Point2> far = {{0, 0}, {5, 0}};
		CHECK(rips_filtration(far, 1.0).size() == 2);
		CHECK(h1_intervals({}, 1.0).empty());
	}

	TEST_CASE("reduced columns have distinct lows") {
		std::mt19937_64 rng(9);
		const auto pts = fixtures::random_points(rng, 150, 4);
		const Filtration f = rips_filtration(pts, 1.0);
		for (auto mode : {ReductionMode::Standard, ReductionMode::Clearing}) {
			const BoundaryReduction r = reduce_boundary_matrix(f, mode);
			std::vector<bool> seen(f.size(), false);
			for (auto low : r.low) {
				if (low < 0) continue;
				CHECK_FALSE(seen[low]);
				seen[low] = true;
			}
		}
	}

	TEST_CASE("scale equivariance") {
		std::mt19937_64 rng(13);
		const auto pts = fixtures::random_points(rng, 40, 3);
		const auto base = all_pairs(pts, 1.5);
		for (double c : {2.0, 0.5, 3.0}) {
			std::vector<Point2> scaled;
			for (const auto& p : pts) scaled.push_back({p.x * c, p.y * c});
			const auto out = all_pairs(scaled, 1.5 * c);
			REQUIRE(out.size() == base.size());
			for (std::size_t i = 0; i < out.size(); ++i) {
				CHECK(out[i].dimension == base[i].dimension);
				CHECK(out[i].birth == doctest::Approx(base[i].birth * c).epsilon(1e-12));
				if (base[i].infinite()) CHECK(out[i].infinite());
				else CHECK(out[i].death == doctest::Approx(base[i].death * c).epsilon(1e-12));
			}
			// Powers of two scale exactly.
			if (c == 2.0 || c == 0.5)
				for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i].birth == base[i].birth * c);
		}
	}

	TEST_CASE("stability: perturbing by delta moves finite endpoints by at most 2 delta") {
		std::mt19937_64 rng(29);
		std::uniform_real_distribution<double> unit(-1, 1);
		const double delta = 0.01;
		for (const auto& pts : {fixtures::unit_square(), fixtures::circle(12, 1.0)}) {
			const auto base = h1_intervals(pts, 3.0);
			auto moved = pts;
			for (auto& p : moved) {
				const double a = unit(rng) * M_PI, r = delta * std::abs(unit(rng));
				p.x += r * std::cos(a);
				p.y += r * std::sin(a);
			}
			const auto out = h1_intervals(moved, 3.0);
			REQUIRE(out.size() == base.size());
			for (std::size_t i = 0; i < out.size(); ++i) {
				CHECK(std::abs(out[i].birth - base[i].birth) <= 2 * delta);
				CHECK(std::abs(out[i].death - base[i].death) <= 2 * delta);
			}
		}
	}

	TEST_CASE("annulus has one dominant class, a convex blob none above the noise floor") {
		std::mt19937_64 rng(31);
		std::uniform_real_distribution<double> u(-1, 1);
		std::vector<Point2> annulus, blob;
		while (annulus.size() < 400) {
			const Point2 p{2 * u(rng), 2 * u(rng)};
			const double r = std::hypot(p.x, p.y);
			if (r >= 1.2 && r <= 2) annulus.push_back(p);
		}
		while (blob.size() < 400) {
			const Point2 p{u(rng), u(rng)};
			if (std::hypot(p.x, p.y) <= 1) blob.push_back(p);
		}
		const double eps = 0.25;
		std::size_t dominant = 0;
		for (const auto& iv : h1_intervals(annulus, 2.5)) dominant += iv.persistence() >= 1.2;
		CHECK(dominant == 1);
		for (const auto& iv : h1_intervals(blob, 1.0)) CHECK(iv.persistence() <= 2 * eps);
	}

	TEST_CASE("filtration order: every face precedes its cofaces") {
		std::mt19937_64 rng(3);
		const auto pts = fixtures::random_points(rng, 60, 3);
		const Filtration f = rips_filtration(pts, 1.0);
		for (std::size_t i = 1; i < f.size(); ++i) {
			const auto& a = f.simplices[i - 1];
			const auto& b = f.simplices[i];
			CHECK((a.diameter < b.diameter || (a.diameter == b.diameter && a.dimension <= b.dimension)));
		}
		const BoundaryReduction r = reduce_boundary_matrix(f);
		for (std::size_t j = 0; j < f.size(); ++j)
			if (r.low[j] >= 0) CHECK(static_cast<std::size_t>(r.low[j]) < j);
	}

	TEST_CASE("standard and clearing reductions pair identically") {
		std::mt19937_64 rng(5);
		for (int trial = 0; trial < 20; ++trial) {
			const auto pts = trial % 2 ? fixtures::random_points(rng, 80, 4) : fixtures::lattice_points(rng, 60, 10);
			const double scale = trial % 2 ? 1.2 : 2.0;
			const Filtration f = rips_filtration(pts, scale);
			const auto standard = reduce_boundary_matrix(f, ReductionMode::Standard);
			const auto clearing = reduce_boundary_matrix(f, ReductionMode::Clearing);
			CHECK(persistence_pairs(f, standard) == persistence_pairs(f, clearing));
			CHECK(clearing.additions <= standard.additions);
		}
	}

	TEST_CASE("reduction matches the betti-sweep oracle on small clouds") {
		std::mt19937_64 rng(17);
		for (std::size_t n = 1; n <= 25; ++n) {
			for (int variant = 0; variant < 4; ++variant) {
				std::vector<Point2> pts;
				if (variant == 0) pts = fixtures::random_points(rng, n, 3);
				else if (variant == 1) pts = fixtures::lattice_points(rng, n, 6);
				else if (variant == 2) pts = fixtures::circle(n, 1.5);
				else pts = fixtures::random_points(rng, n, 1);
				const double scale = variant == 1 ? 2.5 : 1.6;
				const auto sweep = oracles::betti_sweep(pts, scale);
				for (auto mode : {ReductionMode::Standard, ReductionMode::Clearing}) {
					const std::string mismatch = oracles::compare_with_sweep(all_pairs(pts, scale, mode), sweep);
					CHECK_MESSAGE(mismatch.empty(), "n=", n, " variant=", variant, ": ", mismatch);
				}
			}
		}
	}

	TEST_CASE("H0 alive at epsilon equals the component count") {
		std::mt19937_64 rng(23);
		for (int trial = 0; trial < 20; ++trial) {
			const auto pts = fixtures::random_points(rng, 200, 6);
			const double eps = std::uniform_real_distribution<double>(0.1, 0.8)(rng);
			std::size_t alive = 0;
			for (const auto& iv : all_pairs(pts, eps))
				if (iv.dimension == 0 && iv.alive_at(eps)) ++alive;
			CHECK(alive == connected_components(pts, fixtures::iota_ids(pts.size()), eps).size());
		}
	}

	TEST_CASE("simplex budget") {
		std::mt19937_64 rng(1);
		const auto pts = fixtures::random_points(rng, 200, 1);
		try {
			rips_filtration(pts, 2.0, 10'000);
			FAIL("expected BudgetExceeded");
		} catch (const BudgetExceeded& e) {
			CHECK(e.budget() == 10'000);
			CHECK(e.requested() > 10'000);
		}
		CHECK_THROWS_AS(rips_filtration(pts, 0), ConfigError);
		CHECK_THROWS_AS(rips_filtration({}, 1), ConfigError);
	}

	TEST_CASE("holes_at_scale and hole_scale") {
		const std::vector<PersistenceInterval> iv = {{1, 0.5, 2.0}, {1, 0.7, 0.9}, {1, 1.0}};
		CHECK(holes_at_scale(iv, 0.8) == 2);
		CHECK(holes_at_scale(iv, 2.0) == 1);
		CHECK_THROWS_AS(holes_at_scale(iv, 0), ConfigError);
		CHECK(hole_scale(0.1) == doctest::Approx(0.2));
	}

	TEST_CASE("snap_to_grid deduplicates cell centers") {
		const std::vector<Point2> pts = {{0.01, 0.01}, {0.02, 0.04}, {0.26, 0.01}, {-0.01, 0.0}};
		const auto snapped = snap_to_grid(pts, 0.25);
		CHECK(snapped.size() == 3);
		CHECK_THROWS_AS(snap_to_grid(pts, 0), ConfigError);
	}

	TEST_CASE("component_holes on rings, disks and tiny clusters") {
		const auto ring = fixtures::circle(400, 2.0);
		const ComponentHoles r = component_holes(ring, 0.25);
		CHECK(r.holes == 1);
		CHECK(r.raster_points < ring.size());

		std::vector<Point2> disk;
		for (double x = -2; x <= 2; x += 0.05)
			for (double y = -2; y <= 2; y += 0.05)
				if (x * x + y * y <= 4) disk.push_back({x, y});
		CHECK(component_holes(disk, 0.25).holes == 0);

		std::vector<Point2> washer;
		for (const auto& p : disk)
			if (p.x * p.x + p.y * p.y >= 1) washer.push_back(p);
		CHECK(component_holes(washer, 0.25).holes == 1);

		const std::vector<Point2> two = {{0, 0}, {0.01, 0}};
		CHECK(component_holes(two, 0.25).holes == 0);
		// Two rings side by side, one component at the connectivity scale.
		auto eight = fixtures::circle(300, 1.5);
		for (const auto& p : fixtures::circle(300, 1.5)) eight.push_back({p.x + 3.0, p.y});
		CHECK(component_holes(eight, 0.25).holes == 2);
	}
}
