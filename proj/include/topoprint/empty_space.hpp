#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "topoprint/slicing.hpp"
#include "topoprint/types.hpp"

namespace topoprint {

inline constexpr std::size_t kDefaultCellBudget = 50'000'000;
inline constexpr int kDefaultMarginCells = 2;

struct EmptySpaceOptions {
	double xy_res = 0.1;
	double z_res = 0.33;
	int margin_cells = kDefaultMarginCells;
	std::size_t cell_budget = kDefaultCellBudget;
	/// Region to sample; defaults to the cloud's bounding box (required for an empty cloud).
	std::optional<Box3> bounds;
};

/// Regular grid of candidate points. xy cells have size xy_res and cover the
/// bounds expanded by margin_cells per side; z levels are spaced z_res apart,
/// start at bounds.min.z and extend margin_cells levels past each end, so the
/// levels coincide with layer boundaries of a cover starting at bounds.min.z.
struct OccupancyGrid {
	Point3 origin;  ///< center of cell (0, 0, 0)
	double xy_res = 0, z_res = 0;
	std::int64_t nx = 0, ny = 0, nz = 0;
	int margin_cells = 0;
	std::vector<std::uint8_t> occupied;

	std::size_t cell_count() const { return static_cast<std::size_t>(nx * ny * nz); }
	std::size_t index(std::int64_t i, std::int64_t j, std::int64_t k) const { return static_cast<std::size_t>((k * ny + j) * nx + i); }
	Point3 center(std::int64_t i, std::int64_t j, std::int64_t k) const {
		return {origin.x + static_cast<double>(i) * xy_res, origin.y + static_cast<double>(j) * xy_res, origin.z + static_cast<double>(k) * z_res};
	}
	/// Outermost layer of cells.
	bool on_shell(std::int64_t i, std::int64_t j, std::int64_t k) const {
		return i == 0 || j == 0 || k == 0 || i == nx - 1 || j == ny - 1 || k == nz - 1;
	}
};

/// A model point occupies a cell center when it is within xy_res in the xy
/// plane and within half a z level vertically (the printed footprint of one layer).
bool occupies(const Point3& model_point, const Point3& cell_center, double xy_res, double z_res);

/// Throws BudgetExceeded when the grid would exceed options.cell_budget cells.
OccupancyGrid build_occupancy(const PointCloud& cloud, const EmptySpaceOptions& options);

struct EmptySpace {
	PointCloud points;           ///< emitted empty cell centers, ordered by (z, y, x)
	std::vector<bool> on_shell;  ///< per emitted point: lies in the outermost grid layer
	/// Points of z level k are ids level_offsets[k] .. level_offsets[k + 1] - 1.
	std::vector<std::size_t> level_offsets;
	OccupancyGrid grid;
};

EmptySpace fill_empty_space(const PointCloud& cloud, const EmptySpaceOptions& options);

/// Slice s holds z levels s and s + 1 (nz - 1 slices). Same result as
/// assign_points over a cover whose layer boundaries are the levels and whose
/// overlap is below z_res, without per-point interval tests.
SliceAssignment level_assignment(const EmptySpace& space);

} // namespace topoprint
