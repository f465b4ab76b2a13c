#include "topoprint/mapper.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "topoprint/disjoint_sets.hpp"
#include "topoprint/error.hpp"

namespace topoprint {

MapperGraph build_mapper(const SliceAssignment& assignment, const std::vector<std::vector<LayerComponent>>& components,
                         GraphKind kind) {
	if (components.size() != assignment.members.size())
		throw ConfigError("components given for " + std::to_string(components.size()) + " slices, assignment has " +
		                  std::to_string(assignment.members.size()));
	MapperGraph graph;
	graph.kind = kind;
	std::vector<NodeId> first_node(components.size() + 1, 0);
	for (std::size_t s = 0; s < components.size(); ++s) {
		first_node[s] = static_cast<NodeId>(graph.nodes.size());
		for (const LayerComponent& c : components[s]) {
			MapperNode node;
			node.id = static_cast<NodeId>(graph.nodes.size());
			node.slice_index = static_cast<int>(s);
			node.component_id = c.component_id;
			node.member_ids = c.member_ids;
			node.layout_y = static_cast<double>(s);
			graph.nodes.push_back(std::move(node));
		}
	}
	first_node[components.size()] = static_cast<NodeId>(graph.nodes.size());

	// owner[p] = node of slice s+1 holding point p, reset after each slice pair.
	constexpr NodeId kNone = UINT32_MAX;
	std::vector<NodeId> owner(assignment.point_count, kNone);
	for (std::size_t s = 0; s + 1 < components.size(); ++s) {
		for (NodeId v = first_node[s + 1]; v < first_node[s + 2]; ++v)
			for (PointId p : graph.nodes[v].member_ids) owner.at(p) = v;
		std::vector<std::pair<NodeId, NodeId>> found;
		for (NodeId u = first_node[s]; u < first_node[s + 1]; ++u)
			for (PointId p : graph.nodes[u].member_ids)
				if (owner.at(p) != kNone) found.emplace_back(u, owner[p]);
		std::sort(found.begin(), found.end());
		found.erase(std::unique(found.begin(), found.end()), found.end());
		graph.edges.insert(graph.edges.end(), found.begin(), found.end());
		for (NodeId v = first_node[s + 1]; v < first_node[s + 2]; ++v)
			for (PointId p : graph.nodes[v].member_ids) owner[p] = kNone;
	}
	return graph;
}

MapperGraph attach_hole_counts(MapperGraph graph, const std::map<ComponentKey, int>& holes) {
	std::string missing;
	for (MapperNode& node : graph.nodes) {
		const auto it = holes.find({node.slice_index, node.component_id});
		if (it == holes.end()) {
			missing += (missing.empty() ? "" : ", ") + std::string("(") + std::to_string(node.slice_index) + ", " +
			           std::to_string(node.component_id) + ")";
			continue;
		}
		node.hole_count = it->second;
	}
	if (!missing.empty()) throw ValidationError("missing hole counts for components " + missing);
	return graph;
}

MapperGraph layered_layout(MapperGraph graph) {
	if (graph.nodes.empty()) return graph;
	int top = 0;
	for (const auto& n : graph.nodes) top = std::max(top, n.slice_index);
	std::vector<std::vector<NodeId>> layers(static_cast<std::size_t>(top) + 1);
	for (const auto& n : graph.nodes) layers[n.slice_index].push_back(n.id);
	std::vector<std::vector<NodeId>> below(graph.nodes.size()), above(graph.nodes.size());
	for (const auto& [a, b] : graph.edges) {
		const auto& na = graph.nodes[a];
		const auto& nb = graph.nodes[b];
		const NodeId lo = na.slice_index < nb.slice_index ? a : b;
		const NodeId hi = lo == a ? b : a;
		above[lo].push_back(hi);
		below[hi].push_back(lo);
	}

	auto place = [&](std::vector<NodeId>& layer) {
		const double center = (static_cast<double>(layer.size()) - 1) / 2;
		for (std::size_t r = 0; r < layer.size(); ++r) graph.nodes[layer[r]].layout_x = static_cast<double>(r) - center;
	};
	auto sweep = [&](std::size_t l, const std::vector<std::vector<NodeId>>& reference) {
		std::vector<std::pair<double, NodeId>> keyed;
		for (NodeId v : layers[l]) {
			double key = graph.nodes[v].layout_x;
			if (!reference[v].empty()) {
				key = 0;
				for (NodeId u : reference[v]) key += graph.nodes[u].layout_x;
				key /= static_cast<double>(reference[v].size());
			}
			keyed.emplace_back(key, v);
		}
		std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
			if (a.first != b.first) return a.first < b.first;
			return graph.nodes[a.second].component_id < graph.nodes[b.second].component_id;
		});
		for (std::size_t r = 0; r < keyed.size(); ++r) layers[l][r] = keyed[r].second;
		place(layers[l]);
	};

	for (auto& layer : layers) {
		std::sort(layer.begin(), layer.end(),
		          [&](NodeId a, NodeId b) { return graph.nodes[a].component_id < graph.nodes[b].component_id; });
		place(layer);
	}
	for (int pass = 0; pass < 2; ++pass)
		for (std::size_t l = 1; l < layers.size(); ++l) sweep(l, below);
	for (std::size_t l = layers.size() - 1; l-- > 0;) sweep(l, above);

	for (auto& n : graph.nodes) n.layout_y = static_cast<double>(n.slice_index);
	return graph;
}

GlobalComponents global_components(const MapperGraph& graph) {
	DisjointSets sets(graph.nodes.size());
	for (const auto& [a, b] : graph.edges) sets.unite(a, b);
	GlobalComponents out;
	out.labels = sets.labels();
	out.count = out.labels.empty() ? 0 : *std::max_element(out.labels.begin(), out.labels.end()) + 1;
	return out;
}

std::size_t cycle_rank(const MapperGraph& graph) {
	return graph.edges.size() + global_components(graph).count - graph.nodes.size();
}

std::vector<std::vector<NodeId>> fundamental_cycles(const MapperGraph& graph) {
	const std::size_t n = graph.nodes.size();
	std::vector<std::vector<NodeId>> adjacency(n);
	for (const auto& [a, b] : graph.edges) {
		adjacency[a].push_back(b);
		adjacency[b].push_back(a);
	}
	constexpr NodeId kNone = UINT32_MAX;
	std::vector<NodeId> parent(n, kNone);
	std::vector<std::size_t> depth(n, 0);
	std::vector<bool> seen(n, false);
	std::set<std::pair<NodeId, NodeId>> tree;
	for (NodeId root = 0; root < n; ++root) {
		if (seen[root]) continue;
		seen[root] = true;
		std::queue<NodeId> queue;
		queue.push(root);
		while (!queue.empty()) {
			const NodeId u = queue.front();
			queue.pop();
			for (NodeId v : adjacency[u]) {
				if (seen[v]) continue;
				seen[v] = true;
				parent[v] = u;
				depth[v] = depth[u] + 1;
				tree.insert(std::minmax(u, v));
				queue.push(v);
			}
		}
	}
	std::vector<std::vector<NodeId>> cycles;
	for (const auto& e : graph.edges) {
		if (tree.count(e)) continue;
		std::vector<NodeId> left{e.first}, right{e.second};
		NodeId a = e.first, b = e.second;
		while (a != b) {
			if (depth[a] >= depth[b]) {
				a = parent[a];
				left.push_back(a);
			} else {
				b = parent[b];
				right.push_back(b);
			}
		}
		right.pop_back();
		left.insert(left.end(), right.rbegin(), right.rend());
		left.push_back(e.first);
		cycles.push_back(std::move(left));
	}
	return cycles;
}

void check_graph(const MapperGraph& graph) {
	for (std::size_t i = 0; i < graph.nodes.size(); ++i)
		if (graph.nodes[i].id != i) throw ValidationError("node ids must be dense: position " + std::to_string(i) + " holds id " + std::to_string(graph.nodes[i].id));
	std::set<std::pair<NodeId, NodeId>> seen;
	for (const auto& [a, b] : graph.edges) {
		const std::string name = "edge (" + std::to_string(a) + ", " + std::to_string(b) + ")";
		if (a >= graph.nodes.size()) throw ValidationError(name + " references missing node " + std::to_string(a));
		if (b >= graph.nodes.size()) throw ValidationError(name + " references missing node " + std::to_string(b));
		if (a == b) throw ValidationError(name + " is a self-edge");
		if (!seen.insert(std::minmax(a, b)).second) throw ValidationError(name + " is duplicated");
		if (std::abs(graph.nodes[a].slice_index - graph.nodes[b].slice_index) != 1)
			throw ValidationError(name + " joins slices that are not adjacent");
	}
}

} // namespace topoprint
