#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "topoprint/error.hpp"
#include "topoprint/ingest.hpp"
#include "vertex_pool.hpp"

namespace topoprint {

IndexedMesh load_mesh(const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw Error("cannot open '" + path.string() + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	const std::string bytes = buf.str();

	std::string ext = path.extension().string();
	std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
	if (ext == ".ply") return parse_ply(bytes);
	if (ext == ".stl") return parse_stl(bytes);
	throw UnsupportedFormat("unrecognized mesh extension '" + ext + "' (expected .ply or .stl)");
}

namespace {

double distance(const Point3& a, const Point3& b) {
	return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

Point3 midpoint(const Point3& a, const Point3& b) {
	return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5, (a.z + b.z) * 0.5};
}

bool zero_area(const Point3& a, const Point3& b, const Point3& c) {
	const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
	const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
	const double cross = std::hypot(uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx);
	const double scale = std::max({distance(a, b), distance(b, c), distance(c, a)});
	return cross <= 1e-14 * scale * scale;
}

class Subdivider {
public:
	Subdivider(detail::VertexPool& pool, double max_edge) : pool_(pool), limit_(max_edge * (1 + 1e-12)) {}

	void split(const Point3& a, const Point3& b, const Point3& c) {
		if (distance(a, b) <= limit_ && distance(b, c) <= limit_ && distance(c, a) <= limit_) return;
		const Point3 ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
		pool_.intern(ab);
		pool_.intern(bc);
		pool_.intern(ca);
		split(a, ab, ca);
		split(ab, b, bc);
		split(ca, bc, c);
		split(ab, bc, ca);
	}

	/// Levels needed so that halving the longest edge reaches the limit.
	int required_depth(const Point3& a, const Point3& b, const Point3& c) const {
		const double longest = std::max({distance(a, b), distance(b, c), distance(c, a)});
		int depth = 0;
		for (double len = longest; len > limit_; len *= 0.5) ++depth;
		return depth;
	}

private:
	detail::VertexPool& pool_;
	double limit_;
};

} // namespace

PointCloud densify_mesh(const IndexedMesh& mesh, double max_edge) {
	if (!(max_edge > 0) || !std::isfinite(max_edge)) throw ConfigError("densify max_edge must be positive");
	if (mesh.triangles.empty()) throw GeometryError("densify_mesh needs at least one triangle");

	PointCloud out;
	out.points.reserve(mesh.vertices.size());
	detail::VertexPool pool(out.points);
	for (const Point3& p : mesh.vertices.points) pool.intern(p);

	Subdivider subdivider(pool, max_edge);
	bool any_area = false;
	for (const auto& tri : mesh.triangles) {
		const Point3& a = mesh.vertices.points.at(tri[0]);
		const Point3& b = mesh.vertices.points.at(tri[1]);
		const Point3& c = mesh.vertices.points.at(tri[2]);
		if (zero_area(a, b, c)) continue;
		any_area = true;
		if (const int depth = subdivider.required_depth(a, b, c); depth > kMaxSubdivisionDepth)
			throw GeometryError("densify_mesh would need " + std::to_string(depth) + " subdivision levels (limit " +
			                    std::to_string(kMaxSubdivisionDepth) + "); raise max_edge");
		subdivider.split(a, b, c);
	}
	if (!any_area) throw GeometryError("densify_mesh: every triangle has zero area");
	return out;
}

PointCloud scale_to_height(const PointCloud& cloud, double target_height) {
	if (cloud.empty()) throw GeometryError("scale_to_height on an empty cloud");
	if (!(target_height > 0) || !std::isfinite(target_height)) throw ConfigError("target height must be positive");
	const Box3 box = bounding_box(cloud.points);
	const double extent = box.max.z - box.min.z;
	if (!(extent > 0)) throw GeometryError("cannot scale a flat cloud (z-extent is 0)");
	if (extent == target_height) return cloud;

	const double factor = target_height / extent;
	PointCloud out;
	out.points.reserve(cloud.size());
	for (const Point3& p : cloud.points)
		out.points.push_back({box.min.x + (p.x - box.min.x) * factor, box.min.y + (p.y - box.min.y) * factor,
		                      box.min.z + (p.z - box.min.z) * factor});
	return out;
}

} // namespace topoprint
