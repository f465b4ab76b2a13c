#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "topoprint/types.hpp"

namespace topoprint {

/// Parses an ASCII or binary little-endian PLY. Polygonal faces are fan
/// triangulated; triangles that collapse to repeated indices are dropped.
/// Throws ParseError on malformed input and UnsupportedFormat for big-endian bodies.
IndexedMesh parse_ply(std::string_view bytes);

/// Parses binary or ASCII STL. Corners are merged by exact coordinate equality.
IndexedMesh parse_stl(std::string_view bytes);

/// ASCII PLY with float64 vertex coordinates written in shortest round-trip form.
std::string write_ply_ascii(const IndexedMesh& mesh);

/// Reads a .ply or .stl file, dispatching on the extension (case-insensitive).
IndexedMesh load_mesh(const std::filesystem::path& path);

/// Midpoint subdivision: each triangle is split 4-way until all of its edges
/// are at most `max_edge`. Returns the original vertices (in order) followed by
/// the new, deduplicated midpoints.
PointCloud densify_mesh(const IndexedMesh& mesh, double max_edge);

/// Maximum subdivision depth accepted by densify_mesh.
inline constexpr int kMaxSubdivisionDepth = 16;

/// Uniform scale about the bounding-box minimum so the z-extent equals `target_height`.
PointCloud scale_to_height(const PointCloud& cloud, double target_height);

} // namespace topoprint
