#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "topoprint/types.hpp"

namespace topoprint {

/// Uniform 2D spatial hash. Each point lives in cell floor(coord / cell);
/// a query visits the 3x3 block of cells around the query point, which
/// contains every point within distance `cell` of it.
class GridIndex {
public:
	GridIndex(std::span<const Point2> points, double cell);

	std::size_t occupied_cells() const { return cells_.size(); }
	double cell() const { return cell_; }

	/// Calls f(index) for every point in the 3x3 block around q.
	template <class F>
	void for_each_candidate(const Point2& q, F&& f) const {
		const std::int64_t cx = coord(q.x), cy = coord(q.y);
		for (std::int64_t dx = -1; dx <= 1; ++dx)
			for (std::int64_t dy = -1; dy <= 1; ++dy) {
				const auto it = cells_.find(key(cx + dx, cy + dy));
				if (it == cells_.end()) continue;
				for (std::uint32_t k = it->second.begin; k < it->second.end; ++k) f(order_[k]);
			}
	}

	/// Calls f(a_begin, a_end, b_begin, b_end) over index ranges of `order()`
	/// for every occupied cell paired with itself and with each occupied
	/// neighbor cell ahead of it, so every unordered neighbor pair of cells is
	/// visited exactly once.
	template <class F>
	void for_each_cell_pair(F&& f) const {
		static constexpr std::int64_t ahead[4][2] = {{1, -1}, {1, 0}, {1, 1}, {0, 1}};
		for (const auto& [k, r] : cells_) {
			f(r.begin, r.end, r.begin, r.end);
			for (const auto& d : ahead) {
				const auto it = cells_.find(key(k.x + d[0], k.y + d[1]));
				if (it != cells_.end()) f(r.begin, r.end, it->second.begin, it->second.end);
			}
		}
	}

	/// Point indices sorted by cell.
	const std::vector<std::uint32_t>& order() const { return order_; }

	/// Indices of candidate points around q (a superset of the `cell`-ball).
	std::vector<std::uint32_t> query(const Point2& q) const;

	/// Indices of points p with |p - q| <= radius; requires radius <= cell.
	std::vector<std::uint32_t> within(const Point2& q, double radius) const;

private:
	struct Range {
		std::uint32_t begin = 0, end = 0;
	};

	struct CellKey {
		std::int64_t x, y;
		bool operator==(const CellKey&) const = default;
	};
	struct CellHash {
		std::size_t operator()(const CellKey& k) const {
			return static_cast<std::size_t>(static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ull ^
			                                static_cast<std::uint64_t>(k.y) * 0xC2B2AE3D27D4EB4Full);
		}
	};

	std::int64_t coord(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
	static CellKey key(std::int64_t cx, std::int64_t cy) { return {cx, cy}; }

	std::span<const Point2> points_;
	double cell_;
	std::vector<std::uint32_t> order_;
	std::unordered_map<CellKey, Range, CellHash> cells_;
};

inline double squared_distance(const Point2& a, const Point2& b) {
	const double dx = a.x - b.x, dy = a.y - b.y;
	return dx * dx + dy * dy;
}

} // namespace topoprint
