#include "topoprint/types.hpp"

#include <algorithm>

namespace topoprint {

Box3 bounding_box(std::span<const Point3> points) {
	Box3 box{points.front(), points.front()};
	for (const Point3& p : points) {
		box.min.x = std::min(box.min.x, p.x);
		box.min.y = std::min(box.min.y, p.y);
		box.min.z = std::min(box.min.z, p.z);
		box.max.x = std::max(box.max.x, p.x);
		box.max.y = std::max(box.max.y, p.y);
		box.max.z = std::max(box.max.z, p.z);
	}
	return box;
}

std::vector<Point2> project_xy(const PointCloud& cloud, std::span<const PointId> ids) {
	std::vector<Point2> out;
	out.reserve(ids.size());
	for (PointId id : ids) out.push_back({cloud.points[id].x, cloud.points[id].y});
	return out;
}

} // namespace topoprint
