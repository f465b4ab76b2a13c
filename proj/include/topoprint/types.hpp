#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace topoprint {

/// Index of a point within its cloud. Ids are positions and never reshuffled.
using PointId = std::uint32_t;

/// Coordinates are centimeters everywhere.
struct Point3 {
	double x = 0, y = 0, z = 0;
	friend bool operator==(const Point3&, const Point3&) = default;
};

struct Point2 {
	double x = 0, y = 0;
	friend bool operator==(const Point2&, const Point2&) = default;
};

struct Box3 {
	Point3 min, max;
};

struct PointCloud {
	std::vector<Point3> points;

	std::size_t size() const { return points.size(); }
	bool empty() const { return points.empty(); }
};

struct IndexedMesh {
	PointCloud vertices;
	std::vector<std::array<PointId, 3>> triangles;
};

/// Bounding box of a non-empty cloud.
Box3 bounding_box(std::span<const Point3> points);

/// xy projection of the selected points, in the order of `ids`.
std::vector<Point2> project_xy(const PointCloud& cloud, std::span<const PointId> ids);

} // namespace topoprint
