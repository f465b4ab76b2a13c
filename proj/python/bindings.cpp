#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topoprint/analysis.hpp"
#include "topoprint/error.hpp"
#include "topoprint/ingest.hpp"
#include "topoprint/logging.hpp"

namespace py = pybind11;
using namespace topoprint;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointCloud cloud_from(const Array& arr) {
	if (arr.ndim() != 2 || arr.shape(1) != 3) throw py::value_error("expected an (N, 3) array of points");
	PointCloud cloud;
	auto r = arr.unchecked<2>();
	for (py::ssize_t i = 0; i < r.shape(0); ++i) cloud.points.push_back({r(i, 0), r(i, 1), r(i, 2)});
	return cloud;
}

std::vector<Point2> points2_from(const Array& arr) {
	if (arr.ndim() != 2 || arr.shape(1) < 2) throw py::value_error("expected an (N, 2) or (N, 3) array of points");
	std::vector<Point2> out;
	auto r = arr.unchecked<2>();
	for (py::ssize_t i = 0; i < r.shape(0); ++i) out.push_back({r(i, 0), r(i, 1)});
	return out;
}

Array to_array(const PointCloud& cloud) {
	Array out({static_cast<py::ssize_t>(cloud.size()), py::ssize_t{3}});
	auto w = out.mutable_unchecked<2>();
	for (py::ssize_t i = 0; i < w.shape(0); ++i) {
		w(i, 0) = cloud.points[i].x;
		w(i, 1) = cloud.points[i].y;
		w(i, 2) = cloud.points[i].z;
	}
	return out;
}

py::tuple mesh_tuple(const IndexedMesh& mesh) {
	py::array_t<std::uint32_t> tris({static_cast<py::ssize_t>(mesh.triangles.size()), py::ssize_t{3}});
	auto w = tris.mutable_unchecked<2>();
	for (py::ssize_t i = 0; i < w.shape(0); ++i)
		for (int k = 0; k < 3; ++k) w(i, k) = mesh.triangles[i][k];
	return py::make_tuple(to_array(mesh.vertices), tris);
}

IndexedMesh mesh_from(const Array& vertices, const py::array_t<std::int64_t>& triangles) {
	IndexedMesh mesh;
	mesh.vertices = cloud_from(vertices);
	if (triangles.ndim() != 2 || triangles.shape(1) != 3) throw py::value_error("expected an (M, 3) triangle array");
	auto r = triangles.unchecked<2>();
	for (py::ssize_t i = 0; i < r.shape(0); ++i)
		mesh.triangles.push_back({static_cast<PointId>(r(i, 0)), static_cast<PointId>(r(i, 1)), static_cast<PointId>(r(i, 2))});
	return mesh;
}

LayerSpec layer_spec(std::optional<double> z_res, std::optional<int> slices) {
	if (z_res && slices) throw ConfigError("give either z_res or slices, not both");
	if (slices) return SliceCount{*slices};
	return LayerThickness{z_res.value_or(0.33)};
}

AnalysisConfig make_config(std::optional<double> height, std::optional<double> z_res, std::optional<int> slices, double overlap,
                           double xy_res, int margin_cells, std::optional<double> densify, unsigned threads,
                           std::size_t simplex_budget) {
	AnalysisConfig c;
	c.target_height = height;
	c.layers = layer_spec(z_res, slices);
	c.overlap = overlap;
	c.xy_res = xy_res;
	c.margin_cells = margin_cells;
	c.densify_max_edge = densify;
	c.threads = threads;
	c.simplex_budget = simplex_budget;
	return c;
}

} // namespace

PYBIND11_MODULE(_core, m) {
	m.doc() = "Topological printability analysis: Mapper graphs with per-layer hole counts";

	configure_logging();

	static py::exception<Error> base(m, "TopoprintError");
	py::register_exception<ParseError>(m, "ParseError", base.ptr());
	py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
	py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
	py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

	m.def("parse_ply", [](const py::bytes& data) { return mesh_tuple(parse_ply(std::string(data))); }, py::arg("data"),
	      "Parse PLY bytes into (vertices[N,3], triangles[M,3]).");
	m.def("parse_stl", [](const py::bytes& data) { return mesh_tuple(parse_stl(std::string(data))); }, py::arg("data"));
	m.def("densify_mesh", [](const Array& v, const py::array_t<std::int64_t>& t, double max_edge) {
		return to_array(densify_mesh(mesh_from(v, t), max_edge));
	}, py::arg("vertices"), py::arg("triangles"), py::arg("max_edge"));
	m.def("scale_to_height", [](const Array& pts, double h) { return to_array(scale_to_height(cloud_from(pts), h)); },
	      py::arg("points"), py::arg("target_height"));

	m.def("build_cover", [](double z_min, double z_max, std::optional<double> z_res, std::optional<int> slices, double overlap) {
		std::vector<std::tuple<double, double>> out;
		for (const auto& s : build_cover({z_min, z_max}, layer_spec(z_res, slices), overlap).slices) out.emplace_back(s.z_min, s.z_max);
		return out;
	}, py::arg("z_min"), py::arg("z_max"), py::arg("z_res") = py::none(), py::arg("slices") = py::none(),
	      py::arg("overlap") = kDefaultOverlap, "Closed z-intervals of the vertical cover.");
	m.def("assign_points", [](const Array& pts, std::optional<double> z_res, std::optional<int> slices, double overlap) {
		const PointCloud cloud = cloud_from(pts);
		const Box3 box = bounding_box(cloud.points);
		return assign_points(cloud, build_cover({box.min.z, box.max.z}, layer_spec(z_res, slices), overlap)).members;
	}, py::arg("points"), py::arg("z_res") = py::none(), py::arg("slices") = py::none(), py::arg("overlap") = kDefaultOverlap);

	m.def("connected_components", [](const Array& pts, double epsilon) {
		const auto p2 = points2_from(pts);
		std::vector<PointId> ids(p2.size());
		for (PointId i = 0; i < ids.size(); ++i) ids[i] = i;
		std::vector<std::vector<PointId>> out;
		for (auto& c : connected_components(p2, ids, epsilon)) out.push_back(std::move(c.member_ids));
		return out;
	}, py::arg("points"), py::arg("epsilon"), "Components of the xy projection at the closed threshold epsilon.");

	m.def("h1_intervals", [](const Array& pts, double max_scale, std::size_t budget) {
		std::vector<std::tuple<double, double>> out;
		for (const auto& i : h1_intervals(points2_from(pts), max_scale, budget)) out.emplace_back(i.birth, i.death);
		return out;
	}, py::arg("points"), py::arg("max_scale"), py::arg("simplex_budget") = kDefaultSimplexBudget,
	      "(birth, death) pairs of H1 classes; open classes have death = inf.");
	m.def("holes_at_scale", [](const std::vector<std::tuple<double, double>>& intervals, double scale) {
		std::vector<PersistenceInterval> iv;
		for (const auto& [b, d] : intervals) iv.push_back({1, b, d});
		return holes_at_scale(iv, scale);
	}, py::arg("intervals"), py::arg("scale"));

	m.def("fill_empty_space", [](const Array& pts, double xy_res, double z_res, int margin_cells) {
		EmptySpaceOptions o;
		o.xy_res = xy_res;
		o.z_res = z_res;
		o.margin_cells = margin_cells;
		return to_array(fill_empty_space(cloud_from(pts), o).points);
	}, py::arg("points"), py::arg("xy_res"), py::arg("z_res"), py::arg("margin_cells") = kDefaultMarginCells);

	m.def("analyze", [](const Array& pts, std::optional<double> height, std::optional<double> z_res, std::optional<int> slices,
	                    double overlap, double xy_res, int margin_cells, unsigned threads, std::size_t simplex_budget) {
		const AnalysisConfig c = make_config(height, z_res, slices, overlap, xy_res, margin_cells, std::nullopt, threads, simplex_budget);
		const PointCloud cloud = cloud_from(pts);
		py::gil_scoped_release release;
		return export_bundle(analyze(cloud, c));
	}, py::arg("points"), py::arg("height") = py::none(), py::arg("z_res") = py::none(), py::arg("slices") = py::none(),
	      py::arg("overlap") = kDefaultOverlap, py::arg("xy_res") = 0.1, py::arg("margin_cells") = kDefaultMarginCells,
	      py::arg("threads") = 0, py::arg("simplex_budget") = kDefaultSimplexBudget,
	      "Run the full pipeline on an (N, 3) point array and return the bundle JSON.");
	m.def("analyze_file", [](const std::string& path, std::optional<double> height, std::optional<double> z_res,
	                         std::optional<int> slices, double overlap, double xy_res, int margin_cells, std::optional<double> densify,
	                         unsigned threads) {
		const AnalysisConfig c = make_config(height, z_res, slices, overlap, xy_res, margin_cells, densify, threads, kDefaultSimplexBudget);
		py::gil_scoped_release release;
		return export_bundle(analyze(load_mesh(path), c));
	}, py::arg("path"), py::arg("height") = py::none(), py::arg("z_res") = py::none(), py::arg("slices") = py::none(),
	      py::arg("overlap") = kDefaultOverlap, py::arg("xy_res") = 0.1, py::arg("margin_cells") = kDefaultMarginCells,
	      py::arg("densify") = py::none(), py::arg("threads") = 0);
	m.def("validate_bundle", [](const std::string& json) { import_bundle(json); }, py::arg("bundle_json"),
	      "Raise ValidationError if the bundle violates an invariant.");

	m.attr("BUNDLE_VERSION") = std::string(kBundleVersion);
	m.attr("__version__") = "0.1.0";
}
