#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "topoprint/types.hpp"

namespace topoprint {

inline constexpr std::size_t kDefaultSimplexBudget = 5'000'000;

struct Simplex {
	int dimension = 0;
	/// Sorted vertex ids; entries past `dimension` are unused.
	std::array<std::uint32_t, 3> vertices{};
	double diameter = 0;
};

/// Vietoris-Rips filtration truncated at dimension 2, sorted by
/// (diameter, dimension, vertex ids) so every face precedes its cofaces.
/// Vertex v always sits at position v.
struct Filtration {
	std::vector<Simplex> simplices;
	std::size_t point_count = 0;
	double max_scale = 0;

	std::size_t size() const { return simplices.size(); }
};

/// Throws BudgetExceeded when the complex would hold more than `simplex_budget` simplices.
Filtration rips_filtration(std::span<const Point2> points, double max_scale,
                           std::size_t simplex_budget = kDefaultSimplexBudget);

enum class ReductionMode {
	Standard,
	/// Reduce high dimensions first and skip columns known to vanish.
	Clearing,
};

/// Column reduction of the Z/2 boundary matrix.
struct BoundaryReduction {
	/// Lowest nonzero row of each reduced column, or -1 for a zero column.
	std::vector<std::int64_t> low;
	/// Column additions performed.
	std::size_t additions = 0;
};

BoundaryReduction reduce_boundary_matrix(const Filtration& filtration, ReductionMode mode = ReductionMode::Clearing);

struct PersistenceInterval {
	int dimension = 0;
	double birth = 0;
	double death = std::numeric_limits<double>::infinity();

	bool infinite() const { return death == std::numeric_limits<double>::infinity(); }
	double persistence() const { return death - birth; }
	bool alive_at(double scale) const { return birth <= scale && scale < death; }

	friend bool operator==(const PersistenceInterval&, const PersistenceInterval&) = default;
};

/// H0 and H1 intervals from a reduction, sorted by (dimension, birth, death).
/// Zero-length intervals are dropped; positive simplices left unpaired at the
/// filtration's max_scale get an infinite death.
std::vector<PersistenceInterval> persistence_pairs(const Filtration& filtration, const BoundaryReduction& reduction);

std::vector<PersistenceInterval> h1_intervals(std::span<const Point2> points, double max_scale,
                                              std::size_t simplex_budget = kDefaultSimplexBudget);

/// Number of intervals with birth <= scale < death.
std::size_t holes_at_scale(std::span<const PersistenceInterval> intervals, double scale);

/// Rips scale at which holes are counted for a printer with the given xy
/// resolution: a ball of radius xy_res around each point.
inline double hole_scale(double xy_res) { return 2 * xy_res; }

/// Snaps points to the centers of an xy grid with spacing `cell` and removes
/// duplicates. Output is ordered by (row, column).
std::vector<Point2> snap_to_grid(std::span<const Point2> points, double cell);

struct ComponentHoles {
	std::size_t holes = 0;
	std::vector<PersistenceInterval> intervals;
	std::size_t raster_points = 0;
	std::size_t simplices = 0;
};

/// Rasterizes one layer component at the xy resolution, builds its Rips
/// complex up to hole_scale(xy_res) (capped at the raster's diagonal) and
/// counts the H1 classes alive at that scale.
ComponentHoles component_holes(std::span<const Point2> points, double xy_res,
                               std::size_t simplex_budget = kDefaultSimplexBudget);

/// Debug dump: [{"dimension":1,"birth":b,"death":d|null}, ...].
std::string diagram_to_json(std::span<const PersistenceInterval> intervals);

} // namespace topoprint
