#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "topoprint/types.hpp"

namespace topoprint::fixtures {

/// Fibonacci lattice on a sphere of radius `radius` centered at the origin.
PointCloud sphere_shell(double radius, std::size_t count);

/// Removes every point within diameter/2 of `center` (3D distance).
PointCloud puncture(const PointCloud& cloud, const Point3& center, double diameter);

/// Torus standing upright: its axis is the y axis, so horizontal slices cut
/// one band near the top and bottom and two arcs at mid height.
PointCloud upright_torus(double major, double minor, std::size_t around, std::size_t tube);

/// Open cylinder shell around the z axis with its base at z = 0.
PointCloud vertical_cylinder(double radius, double height, std::size_t around, std::size_t up);

/// Solid ball sampled on a cubic lattice of spacing `step`.
PointCloud solid_ball(double radius, double step);

std::vector<Point2> circle(std::size_t count, double radius);
std::vector<Point2> unit_square();
std::vector<Point2> random_points(std::mt19937_64& rng, std::size_t count, double extent);
/// Integer lattice points with many tied distances.
std::vector<Point2> lattice_points(std::mt19937_64& rng, std::size_t count, int side);

std::vector<PointId> iota_ids(std::size_t count);

/// Axis-aligned unit cube as 12 triangles.
IndexedMesh unit_cube();
std::string ascii_stl(const IndexedMesh& mesh);
std::string binary_stl(const IndexedMesh& mesh);

} // namespace topoprint::fixtures
