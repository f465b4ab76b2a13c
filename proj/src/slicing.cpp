#include "topoprint/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topoprint/error.hpp"

namespace topoprint {
namespace {

int slice_count_for(ZExtent extent, const LayerSpec& layers) {
	if (const auto* t = std::get_if<LayerThickness>(&layers)) {
		if (!(t->cm > 0) || !std::isfinite(t->cm)) throw ConfigError("layer thickness must be positive");
		// Tolerate quotients like 2.9999999999999996 that are integral in exact arithmetic.
		const double q = extent.length() / t->cm;
		return std::max(1, static_cast<int>(std::ceil(q - 1e-9)));
	}
	const int n = std::get<SliceCount>(layers).count;
	if (n < 1) throw ConfigError("slice count must be at least 1");
	return n;
}

} // namespace

Cover build_cover(ZExtent extent, LayerSpec layers, double overlap) {
	if (!std::isfinite(extent.min) || !std::isfinite(extent.max) || !(extent.max > extent.min))
		throw ConfigError("cover needs a z-extent with max > min");
	if (!(overlap >= 0) || !std::isfinite(overlap)) throw ConfigError("overlap must be >= 0");

	const int count = slice_count_for(extent, layers);
	Cover cover;
	cover.extent = extent;
	cover.thickness = extent.length() / count;
	cover.overlap = overlap;
	if (overlap >= cover.thickness)
		throw ConfigError("overlap " + std::to_string(overlap) + " cm must be smaller than the slice thickness " +
		                  std::to_string(cover.thickness) + " cm");

	cover.slices.reserve(count);
	for (int i = 0; i < count; ++i) {
		CoverSlice s;
		s.index = i;
		s.base_min = extent.min + cover.thickness * i;
		s.base_max = i + 1 == count ? extent.max : extent.min + cover.thickness * (i + 1);
		s.z_min = std::max(extent.min, s.base_min - overlap / 2);
		s.z_max = std::min(extent.max, s.base_max + overlap / 2);
		s.overlap = overlap;
		cover.slices.push_back(s);
	}
	return cover;
}

SliceAssignment assign_points(const PointCloud& cloud, const Cover& cover) {
	SliceAssignment out;
	out.point_count = cloud.size();
	out.members.resize(cover.size());
	if (cover.slices.empty()) return out;

	const int last = static_cast<int>(cover.size()) - 1;
	std::size_t tests = 0;
	auto contains = [&](int s, double z) {
		++tests;
		return cover.slices[s].z_min <= z && z <= cover.slices[s].z_max;
	};
	const double inverse_thickness = 1.0 / cover.thickness;

	// Expected share per slice, including both overlap bands.
	const double share = std::min(1.0, (cover.thickness + 2 * cover.overlap) / cover.extent.length());
	const auto expected = static_cast<std::size_t>(share * static_cast<double>(cloud.size()) * 1.05) + 16;
	for (auto& m : out.members) m.reserve(std::min(expected, cloud.size()));

	for (PointId id = 0; id < cloud.size(); ++id) {
		const double z = cloud.points[id].z;
		const double t = (z - cover.extent.min) * inverse_thickness;
		// Truncation equals floor for t > 0; the comparisons also reject NaN.
		const int home = t > 0 ? (t < last ? static_cast<int>(t) : last) : 0;
		const CoverSlice& slice = cover.slices[home];
		// Only the neighbor on the nearer side of the base interval can share the point.
		const bool lower_half = z < 0.5 * (slice.base_min + slice.base_max);
		const int neighbor = lower_half ? home - 1 : home + 1;

		const bool in_home = contains(home, z);
		const bool in_neighbor = neighbor >= 0 && neighbor <= last && contains(neighbor, z);
		if (in_home && in_neighbor) {
			out.members[std::min(home, neighbor)].push_back(id);
			out.members[std::max(home, neighbor)].push_back(id);
		} else if (in_home) {
			out.members[home].push_back(id);
		} else if (in_neighbor) {
			out.members[neighbor].push_back(id);
		} else {
			auto gap = [&](int s) {
				const CoverSlice& c = cover.slices[s];
				return z < c.z_min ? c.z_min - z : z - c.z_max;
			};
			const bool use_neighbor = neighbor >= 0 && neighbor <= last && gap(neighbor) < gap(home);
			out.members[use_neighbor ? neighbor : home].push_back(id);
		}
	}
	out.interval_tests = tests;
	return out;
}

} // namespace topoprint
