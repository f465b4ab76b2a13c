#include "topoprint/analysis.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <spdlog/spdlog.h>

#include "topoprint/error.hpp"
#include "topoprint/ingest.hpp"
#include "topoprint/parallel.hpp"

namespace topoprint {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
	return std::chrono::duration<double>(Clock::now() - start).count();
}

bool positive(double v) { return v > 0 && std::isfinite(v); }

/// Runs one pipeline stage, attaching its name and parameters to any failure.
/// Configuration errors keep their type so callers can report them as such.
template <class F>
auto run_stage(const char* name, const std::string& params, F&& fn) {
	spdlog::debug("stage {} ({})", name, params);
	try {
		return fn();
	} catch (const ConfigError& e) {
		throw ConfigError(std::string(name) + " [" + params + "]: " + e.what());
	} catch (const StageError&) {
		throw;
	} catch (const std::exception& e) {
		throw StageError(name, params + ": " + e.what());
	}
}

std::string describe(const AnalysisConfig& c) {
	std::ostringstream out;
	if (const auto* t = std::get_if<LayerThickness>(&c.layers)) out << "z_res=" << t->cm;
	else out << "slices=" << std::get<SliceCount>(c.layers).count;
	out << " overlap=" << c.overlap << " xy_res=" << c.xy_res;
	return out.str();
}

std::vector<SliceRange> ranges_of(const Cover& cover) {
	std::vector<SliceRange> out;
	for (const auto& s : cover.slices) out.push_back({s.z_min, s.z_max});
	return out;
}

} // namespace

void AnalysisConfig::validate() const {
	if (target_height && !positive(*target_height)) throw ConfigError("--height must be positive");
	if (const auto* t = std::get_if<LayerThickness>(&layers)) {
		if (!positive(t->cm)) throw ConfigError("--z-res must be positive");
	} else if (std::get<SliceCount>(layers).count < 1) {
		throw ConfigError("--slices must be at least 1");
	}
	if (!positive(overlap))
		throw ConfigError("--overlap must be positive: graph edges are witnessed by points shared in the overlap");
	if (!positive(xy_res)) throw ConfigError("--xy-res must be positive");
	if (margin_cells < 1) throw ConfigError("--margin-cells must be at least 1");
	if (cell_budget == 0) throw ConfigError("cell budget must be positive");
	if (simplex_budget == 0) throw ConfigError("--simplex-budget must be positive");
	if (densify_max_edge && !positive(*densify_max_edge)) throw ConfigError("--densify must be positive");
}

AnalysisBundle analyze(const IndexedMesh& mesh, const AnalysisConfig& config) {
	config.validate();
	if (!config.densify_max_edge) return analyze(mesh.vertices, config);
	PointCloud dense = run_stage("densify", "max_edge=" + std::to_string(*config.densify_max_edge),
	                             [&] { return densify_mesh(mesh, *config.densify_max_edge); });
	spdlog::info("densified {} vertices to {} points", mesh.vertices.size(), dense.size());
	return analyze(dense, config);
}

AnalysisBundle analyze(const PointCloud& input, const AnalysisConfig& config) {
	config.validate();
	if (input.empty()) throw StageError("ingest", "the point cloud is empty");
	const auto start = Clock::now();
	const std::string params = describe(config);
	const unsigned threads = resolve_threads(config.threads);

	AnalysisBundle bundle;
	bundle.config = config;
	StageTimings timings;
	timings.threads = threads;

	bundle.points = config.target_height
	                    ? run_stage("scale", "height=" + std::to_string(*config.target_height),
	                                [&] { return scale_to_height(input, *config.target_height); })
	                    : input;
	const PointCloud& cloud = bundle.points;
	const Box3 box = bounding_box(cloud.points);

	auto t = Clock::now();
	const Cover cover = run_stage("cover", params, [&] { return build_cover({box.min.z, box.max.z}, config.layers, config.overlap); });
	const SliceAssignment assignment = run_stage("slicing", params, [&] { return assign_points(cloud, cover); });
	timings.slicing_ms += seconds_since(t) * 1e3;
	bundle.filled_slices = ranges_of(cover);
	spdlog::info("{} points in {} slices of {:.4f} cm", cloud.size(), cover.size(), cover.thickness);

	t = Clock::now();
	const auto components = run_stage("components", params, [&] {
		return slice_components(cloud, assignment.members, config.xy_res, threads);
	});
	MapperGraph filled = run_stage("mapper", params, [&] { return build_mapper(assignment, components, GraphKind::Filled); });
	timings.mapper_s += seconds_since(t);

	t = Clock::now();
	std::vector<const LayerComponent*> work;
	for (const auto& slice : components)
		for (const auto& c : slice) work.push_back(&c);
	std::vector<ComponentHoles> holes(work.size());
	run_stage("persistence", params, [&] {
		parallel_for(work.size(), threads, [&](std::size_t w) {
			const LayerComponent& c = *work[w];
			try {
				holes[w] = component_holes(project_xy(cloud, c.member_ids), config.xy_res, config.simplex_budget);
			} catch (const BudgetExceeded& e) {
				throw BudgetExceeded("component (slice " + std::to_string(c.slice_index) + ", component " +
				                         std::to_string(c.component_id) + ", " + std::to_string(c.member_ids.size()) +
				                         " points): " + e.what(),
				                     e.requested(), e.budget());
			}
		});
		return 0;
	});
	std::map<ComponentKey, int> hole_counts;
	for (std::size_t w = 0; w < work.size(); ++w)
		hole_counts[{work[w]->slice_index, work[w]->component_id}] = static_cast<int>(holes[w].holes);
	timings.persistence_s += seconds_since(t);

	t = Clock::now();
	filled = layered_layout(attach_hole_counts(std::move(filled), hole_counts));
	bundle.diagrams.reserve(holes.size());
	for (auto& h : holes) bundle.diagrams.push_back(std::move(h.intervals));
	bundle.filled = std::move(filled);

	EmptySpaceOptions empty_options;
	empty_options.xy_res = config.xy_res;
	empty_options.z_res = cover.thickness;
	empty_options.margin_cells = config.margin_cells;
	empty_options.cell_budget = config.cell_budget;
	empty_options.bounds = Box3{{box.min.x, box.min.y, cover.extent.min}, {box.max.x, box.max.y, cover.extent.max}};
	EmptySpace empty = run_stage("empty-fill", params, [&] { return fill_empty_space(cloud, empty_options); });
	timings.mapper_s += seconds_since(t);

	const auto& grid = empty.grid;
	const double grid_top = grid.origin.z + static_cast<double>(grid.nz - 1) * grid.z_res;
	auto ts = Clock::now();
	const Cover empty_cover = run_stage("empty-cover", params, [&] {
		return build_cover({grid.origin.z, grid_top}, SliceCount{static_cast<int>(grid.nz - 1)}, config.overlap);
	});
	const SliceAssignment empty_assignment = run_stage("empty-slicing", params, [&] { return level_assignment(empty); });
	timings.slicing_ms += seconds_since(ts) * 1e3;
	bundle.empty_slices = ranges_of(empty_cover);
	bundle.empty_slice_offset = config.margin_cells;

	t = Clock::now();
	// Diagonal grid neighbors must connect.
	const double empty_epsilon = config.xy_res * std::sqrt(2.0) + 1e-9;
	const auto empty_components = run_stage("empty-components", params, [&] {
		return slice_components(empty.points, empty_assignment.members, empty_epsilon, threads);
	});
	MapperGraph empty_graph = run_stage("empty-mapper", params, [&] {
		return layered_layout(build_mapper(empty_assignment, empty_components, GraphKind::Empty));
	});
	const Watertightness verdict = run_stage("watertightness", params, [&] { return watertightness(empty_graph, empty.on_shell); });
	for (std::size_t v = 0; v < empty_graph.nodes.size(); ++v) empty_graph.nodes[v].region = verdict.regions[v];
	timings.mapper_s += seconds_since(t);

	bundle.empty = std::move(empty_graph);
	bundle.empty_points = std::move(empty.points);
	bundle.watertight = verdict.watertight;
	timings.total_s = seconds_since(start);
	bundle.timings = timings;
	spdlog::info("filled graph {} nodes / {} edges, empty graph {} nodes in {} components, watertight={}",
	             bundle.filled.nodes.size(), bundle.filled.edges.size(), bundle.empty.nodes.size(), verdict.components,
	             bundle.watertight);
	return bundle;
}

Watertightness watertightness(const MapperGraph& empty_graph, const std::vector<bool>& on_shell) {
	if (empty_graph.nodes.empty()) throw ValidationError("empty-space graph has no nodes; the margin shell should always be empty");
	const GlobalComponents comps = global_components(empty_graph);
	std::vector<std::size_t> shell_points(comps.count, 0);
	for (const auto& node : empty_graph.nodes)
		for (PointId p : node.member_ids)
			if (on_shell.at(p)) ++shell_points[comps.labels[node.id]];

	std::size_t most = 0;
	for (std::size_t c = 1; c < comps.count; ++c)
		if (shell_points[c] > shell_points[most]) most = c;

	Watertightness out;
	out.components = comps.count;
	out.watertight = comps.count >= 2;
	for (const auto& node : empty_graph.nodes) {
		const std::uint32_t c = comps.labels[node.id];
		out.regions.push_back(c == most ? Region::Outside : Region::Inside);
	}
	return out;
}

} // namespace topoprint
