#include "fixtures.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <set>
#include <sstream>

namespace topoprint::fixtures {

using std::numbers::pi;

PointCloud sphere_shell(double radius, std::size_t count) {
	PointCloud out;
	const double golden = pi * (3.0 - std::sqrt(5.0));
	for (std::size_t i = 0; i < count; ++i) {
		const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
		const double r = std::sqrt(1.0 - z * z);
		const double theta = golden * static_cast<double>(i);
		out.points.push_back({radius * r * std::cos(theta), radius * r * std::sin(theta), radius * z});
	}
	return out;
}

PointCloud puncture(const PointCloud& cloud, const Point3& c, double diameter) {
	PointCloud out;
	const double r2 = diameter * diameter / 4;
	for (const Point3& p : cloud.points) {
		const double dx = p.x - c.x, dy = p.y - c.y, dz = p.z - c.z;
		if (dx * dx + dy * dy + dz * dz > r2) out.points.push_back(p);
	}
	return out;
}

PointCloud upright_torus(double major, double minor, std::size_t around, std::size_t tube) {
	PointCloud out;
	for (std::size_t i = 0; i < around; ++i) {
		const double u = 2 * pi * static_cast<double>(i) / static_cast<double>(around);
		for (std::size_t j = 0; j < tube; ++j) {
			const double v = 2 * pi * static_cast<double>(j) / static_cast<double>(tube);
			const double ring = major + minor * std::cos(v);
			out.points.push_back({ring * std::cos(u), minor * std::sin(v), ring * std::sin(u)});
		}
	}
	return out;
}

PointCloud vertical_cylinder(double radius, double height, std::size_t around, std::size_t up) {
	PointCloud out;
	for (std::size_t k = 0; k < up; ++k) {
		const double z = height * static_cast<double>(k) / static_cast<double>(up - 1);
		for (std::size_t i = 0; i < around; ++i) {
			const double t = 2 * pi * static_cast<double>(i) / static_cast<double>(around);
			out.points.push_back({radius * std::cos(t), radius * std::sin(t), z});
		}
	}
	return out;
}

PointCloud solid_ball(double radius, double step) {
	PointCloud out;
	const int n = static_cast<int>(std::floor(radius / step));
	for (int k = -n; k <= n; ++k)
		for (int j = -n; j <= n; ++j)
			for (int i = -n; i <= n; ++i) {
				const Point3 p{i * step, j * step, k * step};
				if (p.x * p.x + p.y * p.y + p.z * p.z <= radius * radius) out.points.push_back(p);
			}
	return out;
}

std::vector<Point2> circle(std::size_t count, double radius) {
	std::vector<Point2> out;
	for (std::size_t i = 0; i < count; ++i) {
		const double t = 2 * pi * static_cast<double>(i) / static_cast<double>(count);
		out.push_back({radius * std::cos(t), radius * std::sin(t)});
	}
	return out;
}

std::vector<Point2> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

std::vector<Point2> random_points(std::mt19937_64& rng, std::size_t count, double extent) {
	std::uniform_real_distribution<double> coord(0, extent);
	std::vector<Point2> out(count);
	for (auto& p : out) p = {coord(rng), coord(rng)};
	return out;
}

std::vector<Point2> lattice_points(std::mt19937_64& rng, std::size_t count, int side) {
	std::uniform_int_distribution<int> coord(0, side - 1);
	std::set<std::pair<int, int>> seen;
	while (seen.size() < count) seen.insert({coord(rng), coord(rng)});
	std::vector<Point2> out;
	for (auto [x, y] : seen) out.push_back({static_cast<double>(x), static_cast<double>(y)});
	return out;
}

std::vector<PointId> iota_ids(std::size_t count) {
	std::vector<PointId> ids(count);
	for (std::size_t i = 0; i < count; ++i) ids[i] = static_cast<PointId>(i);
	return ids;
}

IndexedMesh unit_cube() {
	IndexedMesh m;
	for (int i = 0; i < 8; ++i) m.vertices.points.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
	m.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
	               {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
	return m;
}

std::string ascii_stl(const IndexedMesh& mesh) {
	std::ostringstream out;
	out.precision(17);
	out << "solid cube\n";
	for (const auto& t : mesh.triangles) {
		out << "  facet normal 0 0 0\n    outer loop\n";
		for (PointId v : t) {
			const Point3& p = mesh.vertices.points[v];
			out << "      vertex " << p.x << ' ' << p.y << ' ' << p.z << '\n';
		}
		out << "    endloop\n  endfacet\n";
	}
	out << "endsolid cube\n";
	return out.str();
}

std::string binary_stl(const IndexedMesh& mesh) {
	std::string out(80, ' ');
	const auto count = static_cast<std::uint32_t>(mesh.triangles.size());
	out.append(reinterpret_cast<const char*>(&count), 4);
	for (const auto& t : mesh.triangles) {
		float rec[12] = {};
		for (int c = 0; c < 3; ++c) {
			const Point3& p = mesh.vertices.points[t[c]];
			rec[3 + 3 * c] = static_cast<float>(p.x);
			rec[4 + 3 * c] = static_cast<float>(p.y);
			rec[5 + 3 * c] = static_cast<float>(p.z);
		}
		out.append(reinterpret_cast<const char*>(rec), sizeof rec);
		out.append(2, '\0');
	}
	return out;
}

} // namespace topoprint::fixtures
