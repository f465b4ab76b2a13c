#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "topoprint/components.hpp"
#include "topoprint/slicing.hpp"

namespace topoprint {

enum class GraphKind { Filled, Empty };
enum class Region { Inside, Outside };

using NodeId = std::uint32_t;

struct MapperNode {
	NodeId id = 0;
	int slice_index = 0;
	int component_id = 0;
	std::vector<PointId> member_ids;
	int hole_count = 0;
	double layout_x = 0, layout_y = 0;
	/// Empty-space graphs only.
	std::optional<Region> region;
};

struct MapperGraph {
	GraphKind kind = GraphKind::Filled;
	std::vector<MapperNode> nodes;
	/// (a, b) with a < b, sorted, unique.
	std::vector<std::pair<NodeId, NodeId>> edges;
};

/// (slice_index, component_id)
using ComponentKey = std::pair<int, int>;

/// One node per component, ordered by (slice, component). Nodes of adjacent
/// slices are joined when their member sets share a point id.
MapperGraph build_mapper(const SliceAssignment& assignment, const std::vector<std::vector<LayerComponent>>& components,
                         GraphKind kind = GraphKind::Filled);

/// Throws ValidationError listing every (slice, component) key without a count.
MapperGraph attach_hole_counts(MapperGraph graph, const std::map<ComponentKey, int>& holes);

/// Layered barycenter layout: y is the slice index, x is the centered rank
/// within the layer after two upward and one downward barycenter sweeps.
MapperGraph layered_layout(MapperGraph graph);

struct GlobalComponents {
	std::size_t count = 0;
	/// Per node, dense labels ordered by each component's smallest node id.
	std::vector<std::uint32_t> labels;
};

GlobalComponents global_components(const MapperGraph& graph);

/// Independent cycles, |E| - |V| + #components.
std::size_t cycle_rank(const MapperGraph& graph);

/// One cycle per non-tree edge of a BFS spanning forest, each as a closed node walk.
std::vector<std::vector<NodeId>> fundamental_cycles(const MapperGraph& graph);

/// Throws ValidationError naming the first violated structural invariant
/// (dangling ids, non-adjacent slices, self or duplicate edges).
void check_graph(const MapperGraph& graph);

} // namespace topoprint
