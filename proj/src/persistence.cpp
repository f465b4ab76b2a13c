#include "topoprint/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "topoprint/error.hpp"
#include "topoprint/grid_index.hpp"

namespace topoprint {
namespace {

struct Neighbor {
	std::uint32_t id;
	double distance;
};

void check_budget(std::size_t count, std::size_t budget, std::size_t points) {
	if (count > budget)
		throw BudgetExceeded("Rips complex on " + std::to_string(points) + " points exceeds the simplex budget of " +
		                         std::to_string(budget) + " (reached " + std::to_string(count) + ")",
		                     count, budget);
}

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

/// Sorted symmetric difference, the Z/2 column sum.
void add_column(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source,
                std::vector<std::uint32_t>& scratch) {
	scratch.clear();
	std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(), std::back_inserter(scratch));
	target.swap(scratch);
}

} // namespace

Filtration rips_filtration(std::span<const Point2> points, double max_scale, std::size_t simplex_budget) {
	if (!(max_scale > 0) || !std::isfinite(max_scale)) throw ConfigError("Rips max_scale must be positive");
	if (points.empty()) throw ConfigError("Rips filtration needs at least one point");
	const std::size_t n = points.size();
	check_budget(n, simplex_budget, n);

	// Forward adjacency: neighbors j > i within max_scale, sorted by id.
	std::vector<std::vector<Neighbor>> adjacency(n);
	const GridIndex grid(points, max_scale * (1 + 1e-9));
	const double limit2 = max_scale * max_scale;
	std::size_t edge_count = 0;
	for (std::uint32_t i = 0; i < n; ++i) {
		grid.for_each_candidate(points[i], [&](std::uint32_t j) {
			if (j <= i) return;
			const double d2 = squared_distance(points[i], points[j]);
			if (d2 <= limit2) adjacency[i].push_back({j, std::sqrt(d2)});
		});
		std::sort(adjacency[i].begin(), adjacency[i].end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
		edge_count += adjacency[i].size();
		check_budget(n + edge_count, simplex_budget, n);
	}

	Filtration f;
	f.point_count = n;
	f.max_scale = max_scale;
	f.simplices.reserve(n + edge_count);
	for (std::uint32_t v = 0; v < n; ++v) f.simplices.push_back({0, {v, 0, 0}, 0.0});
	for (std::uint32_t i = 0; i < n; ++i)
		for (const Neighbor& e : adjacency[i]) f.simplices.push_back({1, {i, e.id, 0}, e.distance});

	// Triangles (i, j, k) with i < j < k: k must be a forward neighbor of both i and j.
	for (std::uint32_t i = 0; i < n; ++i) {
		const auto& ni = adjacency[i];
		for (std::size_t a = 0; a < ni.size(); ++a) {
			const std::uint32_t j = ni[a].id;
			const auto& nj = adjacency[j];
			std::size_t b = a + 1, c = 0;
			while (b < ni.size() && c < nj.size()) {
				if (ni[b].id < nj[c].id) {
					++b;
				} else if (nj[c].id < ni[b].id) {
					++c;
				} else {
					const double diameter = std::max({ni[a].distance, ni[b].distance, nj[c].distance});
					f.simplices.push_back({2, {i, j, ni[b].id}, diameter});
					check_budget(f.simplices.size(), simplex_budget, n);
					++b;
					++c;
				}
			}
		}
	}

	std::sort(f.simplices.begin(), f.simplices.end(), [](const Simplex& a, const Simplex& b) {
		if (a.diameter != b.diameter) return a.diameter < b.diameter;
		if (a.dimension != b.dimension) return a.dimension < b.dimension;
		return a.vertices < b.vertices;
	});
	return f;
}

BoundaryReduction reduce_boundary_matrix(const Filtration& filtration, ReductionMode mode) {
	const auto& simplices = filtration.simplices;
	const std::size_t total = simplices.size();

	std::unordered_map<std::uint64_t, std::uint32_t> edge_index;
	for (std::uint32_t j = 0; j < total; ++j)
		if (simplices[j].dimension == 1) edge_index.emplace(edge_key(simplices[j].vertices[0], simplices[j].vertices[1]), j);

	auto boundary = [&](std::uint32_t j) {
		const Simplex& s = simplices[j];
		std::vector<std::uint32_t> col;
		if (s.dimension == 1) {
			col = {s.vertices[0], s.vertices[1]};
		} else if (s.dimension == 2) {
			const auto [a, b, c] = s.vertices;
			col = {edge_index.at(edge_key(a, b)), edge_index.at(edge_key(a, c)), edge_index.at(edge_key(b, c))};
			std::sort(col.begin(), col.end());
		}
		return col;
	};

	BoundaryReduction out;
	out.low.assign(total, -1);
	std::vector<std::int32_t> pivot_slot(total, -1);
	std::vector<std::vector<std::uint32_t>> pivots;
	std::vector<std::uint32_t> scratch;

	auto reduce_column = [&](std::uint32_t j) {
		std::vector<std::uint32_t> col = boundary(j);
		while (!col.empty()) {
			const std::int32_t slot = pivot_slot[col.back()];
			if (slot < 0) break;
			add_column(col, pivots[slot], scratch);
			++out.additions;
		}
		if (col.empty()) return;
		out.low[j] = col.back();
		pivot_slot[col.back()] = static_cast<std::int32_t>(pivots.size());
		pivots.push_back(std::move(col));
	};

	if (mode == ReductionMode::Standard) {
		for (std::uint32_t j = 0; j < total; ++j)
			if (simplices[j].dimension > 0) reduce_column(j);
		return out;
	}

	// A simplex that is the pivot of a higher-dimensional column reduces to zero.
	std::vector<bool> cleared(total, false);
	for (int dim : {2, 1})
		for (std::uint32_t j = 0; j < total; ++j) {
			if (simplices[j].dimension != dim || cleared[j]) continue;
			reduce_column(j);
			if (out.low[j] >= 0) cleared[static_cast<std::size_t>(out.low[j])] = true;
		}
	return out;
}

std::vector<PersistenceInterval> persistence_pairs(const Filtration& filtration, const BoundaryReduction& reduction) {
	const auto& simplices = filtration.simplices;
	std::vector<bool> paired(simplices.size(), false);
	std::vector<PersistenceInterval> out;
	for (std::size_t j = 0; j < simplices.size(); ++j) {
		if (reduction.low[j] < 0) continue;
		const auto i = static_cast<std::size_t>(reduction.low[j]);
		paired[i] = true;
		const Simplex& born = simplices[i];
		if (born.dimension <= 1 && simplices[j].diameter > born.diameter)
			out.push_back({born.dimension, born.diameter, simplices[j].diameter});
	}
	for (std::size_t i = 0; i < simplices.size(); ++i)
		if (simplices[i].dimension <= 1 && reduction.low[i] < 0 && !paired[i])
			out.push_back({simplices[i].dimension, simplices[i].diameter});
	std::sort(out.begin(), out.end(), [](const PersistenceInterval& a, const PersistenceInterval& b) {
		if (a.dimension != b.dimension) return a.dimension < b.dimension;
		if (a.birth != b.birth) return a.birth < b.birth;
		return a.death < b.death;
	});
	return out;
}

std::vector<PersistenceInterval> h1_intervals(std::span<const Point2> points, double max_scale, std::size_t simplex_budget) {
	if (points.empty()) return {};
	const Filtration f = rips_filtration(points, max_scale, simplex_budget);
	auto all = persistence_pairs(f, reduce_boundary_matrix(f));
	std::erase_if(all, [](const PersistenceInterval& i) { return i.dimension != 1; });
	return all;
}

std::size_t holes_at_scale(std::span<const PersistenceInterval> intervals, double scale) {
	if (!(scale > 0)) throw ConfigError("hole scale must be positive");
	return static_cast<std::size_t>(
	    std::count_if(intervals.begin(), intervals.end(), [&](const PersistenceInterval& i) { return i.alive_at(scale); }));
}

std::vector<Point2> snap_to_grid(std::span<const Point2> points, double cell) {
	if (!(cell > 0) || !std::isfinite(cell)) throw ConfigError("raster cell must be positive");
	std::vector<std::pair<std::int64_t, std::int64_t>> cells;
	cells.reserve(points.size());
	for (const Point2& p : points)
		cells.emplace_back(static_cast<std::int64_t>(std::floor(p.y / cell)), static_cast<std::int64_t>(std::floor(p.x / cell)));
	std::sort(cells.begin(), cells.end());
	cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
	std::vector<Point2> out;
	out.reserve(cells.size());
	for (const auto& [row, col] : cells) out.push_back({(static_cast<double>(col) + 0.5) * cell, (static_cast<double>(row) + 0.5) * cell});
	return out;
}

ComponentHoles component_holes(std::span<const Point2> points, double xy_res, std::size_t simplex_budget) {
	ComponentHoles out;
	const auto raster = snap_to_grid(points, xy_res);
	out.raster_points = raster.size();
	// A cycle needs at least four raster cells to survive past the scale where
	// three mutually adjacent cells fill in.
	if (raster.size() < 4) return out;

	double min_x = raster.front().x, max_x = min_x, min_y = raster.front().y, max_y = min_y;
	for (const Point2& p : raster) {
		min_x = std::min(min_x, p.x);
		max_x = std::max(max_x, p.x);
		min_y = std::min(min_y, p.y);
		max_y = std::max(max_y, p.y);
	}
	const double scale = hole_scale(xy_res);
	const double max_scale = std::min(std::max(scale, xy_res), std::hypot(max_x - min_x, max_y - min_y));

	const Filtration f = rips_filtration(raster, max_scale, simplex_budget);
	out.simplices = f.size();
	out.intervals = persistence_pairs(f, reduce_boundary_matrix(f));
	std::erase_if(out.intervals, [](const PersistenceInterval& i) { return i.dimension != 1; });
	out.holes = holes_at_scale(out.intervals, scale);
	return out;
}

std::string diagram_to_json(std::span<const PersistenceInterval> intervals) {
	nlohmann::json arr = nlohmann::json::array();
	for (const auto& i : intervals)
		arr.push_back({{"dimension", i.dimension}, {"birth", i.birth}, {"death", i.infinite() ? nlohmann::json(nullptr) : nlohmann::json(i.death)}});
	return arr.dump();
}

} // namespace topoprint
