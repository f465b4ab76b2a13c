#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "topoprint/analysis.hpp"
#include "topoprint/error.hpp"

namespace topoprint {
namespace {

using nlohmann::json;

double quantize(double v) { return std::round(v * 1e6) / 1e6; }

json optional_number(const std::optional<double>& v) { return v ? json(quantize(*v)) : json(nullptr); }

json points_json(const PointCloud& cloud) {
	json arr = json::array();
	for (const Point3& p : cloud.points) arr.push_back({quantize(p.x), quantize(p.y), quantize(p.z)});
	return arr;
}

json slices_json(const std::vector<SliceRange>& slices) {
	json arr = json::array();
	for (const auto& s : slices) arr.push_back({quantize(s.z_min), quantize(s.z_max)});
	return arr;
}

json graph_json(const MapperGraph& graph, const std::vector<SliceRange>& slices) {
	json nodes = json::array();
	for (const MapperNode& n : graph.nodes) {
		json node = {{"id", n.id},
		             {"slice", n.slice_index},
		             {"component", n.component_id},
		             {"holes", n.hole_count},
		             {"layout", {quantize(n.layout_x), quantize(n.layout_y)}},
		             {"members", n.member_ids}};
		if (graph.kind == GraphKind::Empty)
			node["region"] = n.region.value_or(Region::Inside) == Region::Outside ? "outside" : "inside";
		nodes.push_back(std::move(node));
	}
	json edges = json::array();
	for (const auto& [a, b] : graph.edges) edges.push_back({a, b});
	return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"slices", slices_json(slices)}};
}

json config_json(const AnalysisConfig& c) {
	json out = {{"target_height", optional_number(c.target_height)},
	            {"overlap", quantize(c.overlap)},
	            {"xy_res", quantize(c.xy_res)},
	            {"margin_cells", c.margin_cells},
	            {"cell_budget", c.cell_budget},
	            {"simplex_budget", c.simplex_budget},
	            {"densify_max_edge", optional_number(c.densify_max_edge)},
	            {"z_res", nullptr},
	            {"slice_count", nullptr}};
	if (const auto* t = std::get_if<LayerThickness>(&c.layers)) out["z_res"] = quantize(t->cm);
	else out["slice_count"] = std::get<SliceCount>(c.layers).count;
	return out;
}

// ---- import helpers -------------------------------------------------------

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

void expect_keys(const json& obj, const std::string& where, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
	if (!obj.is_object()) fail(where + " must be an object");
	std::set<std::string> allowed;
	for (const char* k : required) {
		allowed.insert(k);
		if (!obj.contains(k)) fail("missing field '" + std::string(k) + "' in " + where);
	}
	for (const char* k : optional) allowed.insert(k);
	for (const auto& [key, value] : obj.items())
		if (!allowed.count(key)) fail("unknown field '" + key + "' in " + where);
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
	try {
		return obj.at(key).get<T>();
	} catch (const json::exception&) {
		fail("field '" + std::string(key) + "' in " + where + " has the wrong type");
	}
}

std::optional<double> get_optional_number(const json& obj, const char* key, const std::string& where) {
	if (obj.at(key).is_null()) return std::nullopt;
	return get<double>(obj, key, where);
}

Point3 point_from(const json& p, const std::string& where) {
	if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number())
		fail(where + " must be an [x, y, z] number triple");
	return {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
}

PointCloud points_from(const json& arr, const std::string& where) {
	if (!arr.is_array()) fail(where + " must be an array");
	PointCloud cloud;
	cloud.points.reserve(arr.size());
	for (std::size_t i = 0; i < arr.size(); ++i) cloud.points.push_back(point_from(arr[i], where + "[" + std::to_string(i) + "]"));
	return cloud;
}

std::vector<SliceRange> slices_from(const json& arr, const std::string& where) {
	if (!arr.is_array()) fail(where + " must be an array");
	std::vector<SliceRange> out;
	for (const auto& s : arr) {
		if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) fail(where + " entries must be [z_min, z_max]");
		out.push_back({s[0].get<double>(), s[1].get<double>()});
	}
	return out;
}

MapperGraph graph_from(const json& obj, GraphKind kind, const std::string& where, std::vector<SliceRange>& slices) {
	expect_keys(obj, where, {"nodes", "edges", "slices"});
	slices = slices_from(obj["slices"], where + ".slices");
	MapperGraph graph;
	graph.kind = kind;
	const json& nodes = obj["nodes"];
	if (!nodes.is_array()) fail(where + ".nodes must be an array");
	for (std::size_t i = 0; i < nodes.size(); ++i) {
		const std::string at = where + ".nodes[" + std::to_string(i) + "]";
		if (kind == GraphKind::Empty) expect_keys(nodes[i], at, {"id", "slice", "component", "holes", "layout", "members", "region"});
		else expect_keys(nodes[i], at, {"id", "slice", "component", "holes", "layout", "members"});
		MapperNode n;
		n.id = get<NodeId>(nodes[i], "id", at);
		n.slice_index = get<int>(nodes[i], "slice", at);
		n.component_id = get<int>(nodes[i], "component", at);
		n.hole_count = get<int>(nodes[i], "holes", at);
		const auto layout = get<std::vector<double>>(nodes[i], "layout", at);
		if (layout.size() != 2) fail(at + ".layout must be [x, y]");
		n.layout_x = layout[0];
		n.layout_y = layout[1];
		n.member_ids = get<std::vector<PointId>>(nodes[i], "members", at);
		if (kind == GraphKind::Empty) {
			const auto region = get<std::string>(nodes[i], "region", at);
			if (region == "inside") n.region = Region::Inside;
			else if (region == "outside") n.region = Region::Outside;
			else fail(at + ".region must be \"inside\" or \"outside\"");
		}
		graph.nodes.push_back(std::move(n));
	}
	const json& edges = obj["edges"];
	if (!edges.is_array()) fail(where + ".edges must be an array");
	for (const auto& e : edges) {
		if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
			fail(where + ".edges entries must be [a, b] node id pairs");
		graph.edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
	}
	return graph;
}

AnalysisConfig config_from(const json& obj) {
	const std::string where = "config";
	expect_keys(obj, where,
	            {"target_height", "overlap", "xy_res", "margin_cells", "cell_budget", "simplex_budget", "densify_max_edge", "z_res",
	             "slice_count"});
	AnalysisConfig c;
	c.target_height = get_optional_number(obj, "target_height", where);
	c.overlap = get<double>(obj, "overlap", where);
	c.xy_res = get<double>(obj, "xy_res", where);
	c.margin_cells = get<int>(obj, "margin_cells", where);
	c.cell_budget = get<std::size_t>(obj, "cell_budget", where);
	c.simplex_budget = get<std::size_t>(obj, "simplex_budget", where);
	c.densify_max_edge = get_optional_number(obj, "densify_max_edge", where);
	if (!obj["z_res"].is_null() && obj["slice_count"].is_null()) c.layers = LayerThickness{get<double>(obj, "z_res", where)};
	else if (obj["z_res"].is_null() && !obj["slice_count"].is_null()) c.layers = SliceCount{get<int>(obj, "slice_count", where)};
	else fail("config must set exactly one of z_res and slice_count");
	return c;
}

void check_members(const MapperGraph& graph, std::size_t point_count, const std::string& name, const std::string& points_name) {
	for (const MapperNode& n : graph.nodes) {
		if (n.member_ids.empty()) fail("invariant 'members': " + name + " node " + std::to_string(n.id) + " has no members");
		if (!std::is_sorted(n.member_ids.begin(), n.member_ids.end()) ||
		    std::adjacent_find(n.member_ids.begin(), n.member_ids.end()) != n.member_ids.end())
			fail("invariant 'members': " + name + " node " + std::to_string(n.id) + " members are not sorted and unique");
		if (n.member_ids.back() >= point_count)
			fail("invariant 'members': " + name + " node " + std::to_string(n.id) + " references missing point " +
			     std::to_string(n.member_ids.back()) + " (" + points_name + " holds " + std::to_string(point_count) + ")");
	}
}

} // namespace

std::string export_bundle(const AnalysisBundle& bundle, const ExportOptions& options) {
	json empty = graph_json(bundle.empty, bundle.empty_slices);
	empty["points"] = points_json(bundle.empty_points);
	empty["slice_offset"] = bundle.empty_slice_offset;

	json timings = nullptr;
	if (options.include_timings && bundle.timings) {
		const StageTimings& t = *bundle.timings;
		timings = {{"slicing_ms", t.slicing_ms}, {"mapper_s", t.mapper_s}, {"persistence_s", t.persistence_s},
		           {"total_s", t.total_s}, {"threads", t.threads}};
	}
	const json doc = {{"version", kBundleVersion},
	                  {"config", config_json(bundle.config)},
	                  {"points", points_json(bundle.points)},
	                  {"filled_graph", graph_json(bundle.filled, bundle.filled_slices)},
	                  {"empty_graph", std::move(empty)},
	                  {"watertight", bundle.watertight},
	                  {"timings", std::move(timings)}};
	return doc.dump() + "\n";
}

AnalysisBundle import_bundle(std::string_view bytes) {
	json doc;
	try {
		doc = json::parse(bytes);
	} catch (const json::parse_error& e) {
		throw ParseError(std::string("bundle is not valid JSON: ") + e.what(), e.byte);
	}
	if (!doc.is_object() || !doc.contains("version")) fail("bundle has no version field");
	if (!doc["version"].is_string() || doc["version"].get<std::string>() != kBundleVersion)
		throw UnsupportedFormat("bundle version " + doc["version"].dump() + " is not \"" + std::string(kBundleVersion) + "\"");
	expect_keys(doc, "bundle", {"version", "config", "points", "filled_graph", "empty_graph", "watertight", "timings"});

	AnalysisBundle b;
	b.config = config_from(doc["config"]);
	b.points = points_from(doc["points"], "points");
	b.filled = graph_from(doc["filled_graph"], GraphKind::Filled, "filled_graph", b.filled_slices);

	json empty = doc["empty_graph"];
	if (!empty.is_object() || !empty.contains("points") || !empty.contains("slice_offset"))
		fail("empty_graph must carry 'points' and 'slice_offset'");
	b.empty_points = points_from(empty["points"], "empty_graph.points");
	b.empty_slice_offset = get<int>(empty, "slice_offset", "empty_graph");
	empty.erase("points");
	empty.erase("slice_offset");
	b.empty = graph_from(empty, GraphKind::Empty, "empty_graph", b.empty_slices);

	if (!doc["watertight"].is_boolean()) fail("field 'watertight' must be a boolean");
	b.watertight = doc["watertight"].get<bool>();

	const json& t = doc["timings"];
	if (!t.is_null()) {
		expect_keys(t, "timings", {"slicing_ms", "mapper_s", "persistence_s", "total_s", "threads"});
		b.timings = StageTimings{get<double>(t, "slicing_ms", "timings"), get<double>(t, "mapper_s", "timings"),
		                         get<double>(t, "persistence_s", "timings"), get<double>(t, "total_s", "timings"),
		                         get<unsigned>(t, "threads", "timings")};
	}
	validate_bundle(b);
	return b;
}

void validate_bundle(const AnalysisBundle& b) {
	try {
		b.config.validate();
	} catch (const ConfigError& e) {
		fail(std::string("invariant 'config': ") + e.what());
	}
	for (const auto& [graph, name] : {std::pair{&b.filled, "filled_graph"}, std::pair{&b.empty, "empty_graph"}}) {
		try {
			check_graph(*graph);
		} catch (const ValidationError& e) {
			fail(std::string("invariant 'graph-structure': ") + name + ": " + e.what());
		}
	}
	check_members(b.filled, b.points.size(), "filled_graph", "points");
	check_members(b.empty, b.empty_points.size(), "empty_graph", "empty_graph.points");
	// Edges are witnessed by shared overlap points; member lists are sorted by now.
	for (const auto& [graph, name] : {std::pair{&b.filled, "filled_graph"}, std::pair{&b.empty, "empty_graph"}})
		for (const auto& [u, v] : graph->edges) {
			const auto& x = graph->nodes[u].member_ids;
			const auto& y = graph->nodes[v].member_ids;
			auto i = x.begin(), j = y.begin();
			while (i != x.end() && j != y.end() && *i != *j) (*i < *j) ? ++i : ++j;
			if (i == x.end() || j == y.end())
				fail(std::string("invariant 'edge-witness': ") + name + " edge (" + std::to_string(u) + ", " + std::to_string(v) +
				     ") joins nodes with no shared point");
		}

	for (const auto& [graph, slices, name] : {std::tuple{&b.filled, &b.filled_slices, "filled_graph"},
	                                          std::tuple{&b.empty, &b.empty_slices, "empty_graph"}})
		for (const MapperNode& n : graph->nodes) {
			if (n.slice_index < 0 || static_cast<std::size_t>(n.slice_index) >= slices->size())
				fail(std::string("invariant 'slice-range': ") + name + " node " + std::to_string(n.id) + " references missing slice " +
				     std::to_string(n.slice_index));
			if (n.layout_y != static_cast<double>(n.slice_index))
				fail(std::string("invariant 'layout-layers': ") + name + " node " + std::to_string(n.id) + " is not drawn on its slice row");
			if (n.hole_count < 0) fail(std::string("invariant 'holes': ") + name + " node " + std::to_string(n.id) + " has negative holes");
		}
	for (const MapperNode& n : b.empty.nodes)
		if (n.hole_count != 0) fail("invariant 'holes': empty_graph node " + std::to_string(n.id) + " carries holes");

	std::vector<bool> covered(b.points.size(), false);
	for (const MapperNode& n : b.filled.nodes)
		for (PointId p : n.member_ids) covered[p] = true;
	if (const auto it = std::find(covered.begin(), covered.end(), false); it != covered.end())
		fail("invariant 'coverage': point " + std::to_string(it - covered.begin()) + " belongs to no filled node");

	if (b.empty.nodes.empty()) fail("invariant 'empty-space': the empty graph has no nodes");
	const GlobalComponents comps = global_components(b.empty);
	if (b.watertight != (comps.count >= 2))
		fail("invariant 'watertight-flag': watertight is " + std::string(b.watertight ? "true" : "false") + " but the empty graph has " +
		     std::to_string(comps.count) + " component(s)");
	std::vector<std::optional<Region>> region_of(comps.count);
	for (const MapperNode& n : b.empty.nodes) {
		auto& r = region_of[comps.labels[n.id]];
		if (r && *r != *n.region)
			fail("invariant 'regions': empty_graph node " + std::to_string(n.id) + " disagrees with its component's region");
		r = n.region;
	}
	if (std::count(region_of.begin(), region_of.end(), Region::Outside) != 1)
		fail("invariant 'regions': exactly one empty-space component must be labeled outside");
}

} // namespace topoprint
