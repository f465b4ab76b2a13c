#pragma once

#include <span>
#include <vector>

#include "topoprint/grid_index.hpp"
#include "topoprint/types.hpp"

namespace topoprint {

/// A connected component of one slice at connectivity radius epsilon.
struct LayerComponent {
	int slice_index = 0;
	/// Dense per slice, ordered by smallest member id.
	int component_id = 0;
	std::vector<PointId> member_ids;

	friend bool operator==(const LayerComponent&, const LayerComponent&) = default;
};

/// Single-linkage clustering at the closed threshold `epsilon`. `points[i]`
/// carries global id `ids[i]`. Uses a spatial hash with cell = epsilon.
std::vector<LayerComponent> connected_components(std::span<const Point2> points, std::span<const PointId> ids,
                                                 double epsilon, int slice_index = 0);

/// All-pairs O(n^2) reference with the same canonical output.
std::vector<LayerComponent> brute_force_components(std::span<const Point2> points, std::span<const PointId> ids,
                                                   double epsilon, int slice_index = 0);

/// Spatial hash over `points` used by connected_components.
GridIndex build_grid_index(std::span<const Point2> points, double cell);

/// Components of every slice, xy-projected. Slices run concurrently on up to
/// `threads` workers (0 means hardware concurrency).
std::vector<std::vector<LayerComponent>> slice_components(const PointCloud& cloud,
                                                          const std::vector<std::vector<PointId>>& slices,
                                                          double epsilon, unsigned threads = 0);

} // namespace topoprint
