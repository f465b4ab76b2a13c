#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topoprint/empty_space.hpp"
#include "topoprint/mapper.hpp"
#include "topoprint/persistence.hpp"
#include "topoprint/slicing.hpp"

namespace topoprint {

inline constexpr std::string_view kBundleVersion = "topoprint/1";

struct AnalysisConfig {
	std::optional<double> target_height;
	LayerSpec layers = LayerThickness{0.33};
	double overlap = kDefaultOverlap;
	double xy_res = 0.1;
	int margin_cells = kDefaultMarginCells;
	std::size_t cell_budget = kDefaultCellBudget;
	std::size_t simplex_budget = kDefaultSimplexBudget;
	std::optional<double> densify_max_edge;
	/// Worker threads for per-slice and per-component stages; 0 uses all cores.
	unsigned threads = 0;

	/// Throws ConfigError on the first invalid field.
	void validate() const;
};

/// Wall-clock cost of each stage, from a monotonic clock.
struct StageTimings {
	double slicing_ms = 0;
	/// Components and graph assembly for both filled and empty space, plus the empty-space fill.
	double mapper_s = 0;
	double persistence_s = 0;
	double total_s = 0;
	unsigned threads = 1;
};

struct SliceRange {
	double z_min = 0, z_max = 0;
	friend bool operator==(const SliceRange&, const SliceRange&) = default;
};

struct AnalysisBundle {
	AnalysisConfig config;
	PointCloud points;
	MapperGraph filled;
	std::vector<SliceRange> filled_slices;
	PointCloud empty_points;
	MapperGraph empty;
	std::vector<SliceRange> empty_slices;
	/// Empty-space slice index of filled slice 0.
	int empty_slice_offset = 0;
	bool watertight = false;
	std::optional<StageTimings> timings;
	/// Per filled node; kept in memory only, not serialized.
	std::vector<std::vector<PersistenceInterval>> diagrams;
};

AnalysisBundle analyze(const PointCloud& cloud, const AnalysisConfig& config);

/// Same as the point-cloud overload; densifies first when config.densify_max_edge is set.
AnalysisBundle analyze(const IndexedMesh& mesh, const AnalysisConfig& config);

struct Watertightness {
	bool watertight = false;
	std::size_t components = 0;
	/// Per node of the empty graph.
	std::vector<Region> regions;
};

/// Watertight iff the empty graph has at least two global components. The
/// component holding the most shell points is outside; all others are inside.
/// `on_shell` is indexed by empty-space point id.
Watertightness watertightness(const MapperGraph& empty_graph, const std::vector<bool>& on_shell);

struct ExportOptions {
	bool include_timings = false;
};

/// Canonical JSON: sorted keys, coordinates quantized to 1e-6 cm.
std::string export_bundle(const AnalysisBundle& bundle, const ExportOptions& options = {});

/// Parses and validates; throws ValidationError naming the offending field or id.
AnalysisBundle import_bundle(std::string_view bytes);

/// Re-checks cross references and derived invariants of a bundle.
void validate_bundle(const AnalysisBundle& bundle);

} // namespace topoprint
