#include "topoprint/components.hpp"

#include <algorithm>
#include <cmath>

#include "topoprint/disjoint_sets.hpp"
#include "topoprint/error.hpp"
#include "topoprint/parallel.hpp"

namespace topoprint {
namespace {

void check_inputs(std::span<const Point2> points, std::span<const PointId> ids, double epsilon) {
	if (!(epsilon > 0) || !std::isfinite(epsilon)) throw ConfigError("connectivity epsilon must be positive");
	if (points.size() != ids.size()) throw ConfigError("points and ids differ in length");
}

std::vector<LayerComponent> canonical(DisjointSets& sets, std::span<const PointId> ids, int slice_index) {
	const std::size_t n = ids.size();
	std::vector<std::uint32_t> root_slot(n, UINT32_MAX);
	std::vector<LayerComponent> out;
	for (std::uint32_t i = 0; i < n; ++i) {
		const std::uint32_t r = sets.find(i);
		if (root_slot[r] == UINT32_MAX) {
			root_slot[r] = static_cast<std::uint32_t>(out.size());
			out.push_back({slice_index, 0, {}});
		}
		out[root_slot[r]].member_ids.push_back(ids[i]);
	}
	for (auto& c : out) std::sort(c.member_ids.begin(), c.member_ids.end());
	std::sort(out.begin(), out.end(), [](const LayerComponent& a, const LayerComponent& b) {
		return a.member_ids.front() < b.member_ids.front();
	});
	for (std::size_t k = 0; k < out.size(); ++k) out[k].component_id = static_cast<int>(k);
	return out;
}

} // namespace

GridIndex build_grid_index(std::span<const Point2> points, double cell) { return GridIndex(points, cell); }

std::vector<LayerComponent> connected_components(std::span<const Point2> points, std::span<const PointId> ids,
                                                 double epsilon, int slice_index) {
	check_inputs(points, ids, epsilon);
	DisjointSets sets(points.size());
	// Slightly inflated cell keeps pairs at distance exactly epsilon inside the 3x3 block.
	const GridIndex grid(points, epsilon * (1 + 1e-9));
	const double eps2 = epsilon * epsilon;
	const auto& order = grid.order();
	grid.for_each_cell_pair([&](std::uint32_t a0, std::uint32_t a1, std::uint32_t b0, std::uint32_t b1) {
		const bool same = a0 == b0;
		for (std::uint32_t a = a0; a < a1; ++a) {
			const std::uint32_t i = order[a];
			for (std::uint32_t b = same ? a + 1 : b0; b < b1; ++b) {
				const std::uint32_t j = order[b];
				if (squared_distance(points[i], points[j]) <= eps2) sets.unite(i, j);
			}
		}
	});
	return canonical(sets, ids, slice_index);
}

std::vector<LayerComponent> brute_force_components(std::span<const Point2> points, std::span<const PointId> ids,
                                                   double epsilon, int slice_index) {
	check_inputs(points, ids, epsilon);
	DisjointSets sets(points.size());
	const double eps2 = epsilon * epsilon;
	for (std::uint32_t i = 0; i < points.size(); ++i)
		for (std::uint32_t j = i + 1; j < points.size(); ++j)
			if (squared_distance(points[i], points[j]) <= eps2) sets.unite(i, j);
	return canonical(sets, ids, slice_index);
}

std::vector<std::vector<LayerComponent>> slice_components(const PointCloud& cloud,
                                                          const std::vector<std::vector<PointId>>& slices,
                                                          double epsilon, unsigned threads) {
	std::vector<std::vector<LayerComponent>> out(slices.size());
	parallel_for(slices.size(), threads, [&](std::size_t s) {
		const auto projected = project_xy(cloud, slices[s]);
		out[s] = connected_components(projected, slices[s], epsilon, static_cast<int>(s));
	});
	return out;
}

} // namespace topoprint
