#pragma once

#include "fixtures.hpp"
#include "topoprint/analysis.hpp"

namespace topoprint::fixtures {

inline constexpr double kSphereRadius = 5.0;
inline constexpr std::size_t kSpherePoints = 40'000;

/// Printer settings used with the shell fixtures.
inline AnalysisConfig shell_config() {
	AnalysisConfig c;
	c.layers = LayerThickness{0.5};
	c.overlap = 0.05;
	c.xy_res = 0.25;
	c.threads = 1;
	return c;
}

inline PointCloud test_sphere() { return sphere_shell(kSphereRadius, kSpherePoints); }

/// Puncture of diameter 4 * xy_res on the equator.
inline PointCloud punctured_sphere() {
	return puncture(test_sphere(), {kSphereRadius, 0, 0}, 4 * shell_config().xy_res);
}

inline PointCloud test_torus() { return upright_torus(3.0, 1.0, 400, 100); }
inline PointCloud test_cylinder() { return vertical_cylinder(2.0, 4.0, 200, 81); }

} // namespace topoprint::fixtures
