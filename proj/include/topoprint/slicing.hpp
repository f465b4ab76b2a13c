#pragma once

#include <variant>
#include <vector>

#include "topoprint/types.hpp"

namespace topoprint {

/// Printer layer thickness in cm; the slice count becomes ceil(extent / thickness).
struct LayerThickness {
	double cm = 0;
};

struct SliceCount {
	int count = 0;
};

using LayerSpec = std::variant<LayerThickness, SliceCount>;

inline constexpr double kDefaultOverlap = 0.05;

struct ZExtent {
	double min = 0, max = 0;
	double length() const { return max - min; }
};

/// One closed z-interval of the vertical cover. The base intervals partition
/// the extent; z_min/z_max extend them by half the overlap on each side.
struct CoverSlice {
	int index = 0;
	double base_min = 0, base_max = 0;
	double z_min = 0, z_max = 0;
	double overlap = 0;
};

struct Cover {
	ZExtent extent;
	double thickness = 0;
	double overlap = 0;
	std::vector<CoverSlice> slices;

	std::size_t size() const { return slices.size(); }
};

/// Throws ConfigError when overlap is negative or not smaller than the slice thickness.
Cover build_cover(ZExtent extent, LayerSpec layers, double overlap = kDefaultOverlap);

struct SliceAssignment {
	/// Sorted point ids per slice.
	std::vector<std::vector<PointId>> members;
	std::size_t point_count = 0;
	/// Closed-interval tests performed; at most two per point.
	std::size_t interval_tests = 0;
};

/// Assigns each point to every slice whose closed interval contains its z.
/// A point that falls outside all slices goes to the nearest one.
SliceAssignment assign_points(const PointCloud& cloud, const Cover& cover);

} // namespace topoprint
