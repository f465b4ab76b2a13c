#include "topoprint/empty_space.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "topoprint/error.hpp"

namespace topoprint {

bool occupies(const Point3& p, const Point3& c, double xy_res, double z_res) {
	const double dx = p.x - c.x, dy = p.y - c.y;
	return dx * dx + dy * dy <= xy_res * xy_res && std::abs(p.z - c.z) <= z_res / 2;
}

OccupancyGrid build_occupancy(const PointCloud& cloud, const EmptySpaceOptions& options) {
	if (!(options.xy_res > 0) || !(options.z_res > 0)) throw ConfigError("empty-space resolutions must be positive");
	if (options.margin_cells < 1) throw ConfigError("margin_cells must be at least 1");
	if (!options.bounds && cloud.empty()) throw ConfigError("empty-space fill of an empty cloud needs explicit bounds");
	const Box3 box = options.bounds ? *options.bounds : bounding_box(cloud.points);
	const int m = options.margin_cells;

	OccupancyGrid grid;
	grid.xy_res = options.xy_res;
	grid.z_res = options.z_res;
	grid.margin_cells = m;
	auto cells_along = [](double extent, double res) {
		return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(extent / res - 1e-9)));
	};
	const double x_extent = box.max.x - box.min.x, y_extent = box.max.y - box.min.y, z_extent = box.max.z - box.min.z;
	grid.nx = cells_along(x_extent, options.xy_res) + 2 * m;
	grid.ny = cells_along(y_extent, options.xy_res) + 2 * m;
	// Levels 0..L sit on the layer boundaries of the bounds, then m extra per side.
	const std::int64_t levels = z_extent > 0 ? static_cast<std::int64_t>(std::ceil(z_extent / options.z_res - 1e-9)) + 1 : 1;
	grid.nz = levels + 2 * m;

	const double cells = static_cast<double>(grid.nx) * static_cast<double>(grid.ny) * static_cast<double>(grid.nz);
	if (cells > static_cast<double>(options.cell_budget))
		throw BudgetExceeded("empty-space grid needs " + std::to_string(static_cast<std::size_t>(cells)) + " cells, budget is " +
		                         std::to_string(options.cell_budget) + "; use a coarser xy/z resolution",
		                     static_cast<std::size_t>(cells), options.cell_budget);

	// xy cells are centered within the padded bounds.
	const double pad_x = (static_cast<double>(grid.nx - 2 * m) * options.xy_res - x_extent) / 2;
	const double pad_y = (static_cast<double>(grid.ny - 2 * m) * options.xy_res - y_extent) / 2;
	grid.origin = {box.min.x - pad_x - (m - 0.5) * options.xy_res, box.min.y - pad_y - (m - 0.5) * options.xy_res,
	               box.min.z - m * options.z_res};
	grid.occupied.assign(grid.cell_count(), 0);

	// Rasterize each model point into the cells it occupies.
	for (const Point3& p : cloud.points) {
		const double fk = (p.z - grid.origin.z) / grid.z_res;
		const double fi = (p.x - grid.origin.x) / grid.xy_res;
		const double fj = (p.y - grid.origin.y) / grid.xy_res;
		// Index bounds of the cylinder with a little slack; occupies() decides.
		constexpr double slack = 1e-9;
		const auto k0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(fk - 0.5 - slack)));
		const auto k1 = std::min<std::int64_t>(grid.nz - 1, static_cast<std::int64_t>(std::floor(fk + 0.5 + slack)));
		const auto i0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(fi - 1 - slack)));
		const auto i1 = std::min<std::int64_t>(grid.nx - 1, static_cast<std::int64_t>(std::floor(fi + 1 + slack)));
		const auto j0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(fj - 1 - slack)));
		const auto j1 = std::min<std::int64_t>(grid.ny - 1, static_cast<std::int64_t>(std::floor(fj + 1 + slack)));
		for (std::int64_t k = k0; k <= k1; ++k)
			for (std::int64_t j = j0; j <= j1; ++j)
				for (std::int64_t i = i0; i <= i1; ++i)
					if (occupies(p, grid.center(i, j, k), grid.xy_res, grid.z_res)) grid.occupied[grid.index(i, j, k)] = 1;
	}
	return grid;
}

EmptySpace fill_empty_space(const PointCloud& cloud, const EmptySpaceOptions& options) {
	EmptySpace out;
	out.grid = build_occupancy(cloud, options);
	const OccupancyGrid& g = out.grid;
	out.level_offsets.push_back(0);
	for (std::int64_t k = 0; k < g.nz; ++k, out.level_offsets.push_back(out.points.size()))
		for (std::int64_t j = 0; j < g.ny; ++j)
			for (std::int64_t i = 0; i < g.nx; ++i) {
				if (g.occupied[g.index(i, j, k)]) continue;
				out.points.points.push_back(g.center(i, j, k));
				out.on_shell.push_back(g.on_shell(i, j, k));
			}
	return out;
}

SliceAssignment level_assignment(const EmptySpace& space) {
	const auto& off = space.level_offsets;
	if (off.size() < 3) throw ConfigError("empty-space slicing needs at least two z levels");
	SliceAssignment out;
	out.point_count = space.points.size();
	out.members.resize(off.size() - 2);
	for (std::size_t s = 0; s < out.members.size(); ++s) {
		auto& m = out.members[s];
		m.resize(off[s + 2] - off[s]);
		std::iota(m.begin(), m.end(), static_cast<PointId>(off[s]));
	}
	return out;
}

} // namespace topoprint
