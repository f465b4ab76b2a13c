#include "topoprint/grid_index.hpp"

#include <algorithm>
#include <numeric>

#include "topoprint/error.hpp"

namespace topoprint {

GridIndex::GridIndex(std::span<const Point2> points, double cell) : points_(points), cell_(cell) {
	if (!(cell > 0) || !std::isfinite(cell)) throw ConfigError("grid cell size must be positive");
	std::vector<CellKey> keys(points.size());
	for (std::size_t i = 0; i < points.size(); ++i) keys[i] = key(coord(points[i].x), coord(points[i].y));

	order_.resize(points.size());
	std::iota(order_.begin(), order_.end(), std::uint32_t{0});
	std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
		if (keys[a].x != keys[b].x) return keys[a].x < keys[b].x;
		if (keys[a].y != keys[b].y) return keys[a].y < keys[b].y;
		return a < b;
	});
	cells_.reserve(points.size());
	for (std::uint32_t k = 0; k < order_.size();) {
		std::uint32_t end = k + 1;
		while (end < order_.size() && keys[order_[end]] == keys[order_[k]]) ++end;
		cells_.emplace(keys[order_[k]], Range{k, end});
		k = end;
	}
}

std::vector<std::uint32_t> GridIndex::query(const Point2& q) const {
	std::vector<std::uint32_t> out;
	for_each_candidate(q, [&](std::uint32_t i) { out.push_back(i); });
	return out;
}

std::vector<std::uint32_t> GridIndex::within(const Point2& q, double radius) const {
	std::vector<std::uint32_t> out;
	const double r2 = radius * radius;
	for_each_candidate(q, [&](std::uint32_t i) {
		if (squared_distance(points_[i], q) <= r2) out.push_back(i);
	});
	std::sort(out.begin(), out.end());
	return out;
}

} // namespace topoprint
