#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <optional>

#include "topoprint/error.hpp"
#include "topoprint/ingest.hpp"

namespace topoprint {
namespace {

enum class Scalar { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<Scalar> scalar_from_name(std::string_view name) {
	if (name == "char" || name == "int8") return Scalar::Int8;
	if (name == "uchar" || name == "uint8") return Scalar::UInt8;
	if (name == "short" || name == "int16") return Scalar::Int16;
	if (name == "ushort" || name == "uint16") return Scalar::UInt16;
	if (name == "int" || name == "int32") return Scalar::Int32;
	if (name == "uint" || name == "uint32") return Scalar::UInt32;
	if (name == "float" || name == "float32") return Scalar::Float32;
	if (name == "double" || name == "float64") return Scalar::Float64;
	return std::nullopt;
}

std::size_t scalar_size(Scalar s) {
	switch (s) {
	case Scalar::Int8:
	case Scalar::UInt8: return 1;
	case Scalar::Int16:
	case Scalar::UInt16: return 2;
	case Scalar::Int32:
	case Scalar::UInt32:
	case Scalar::Float32: return 4;
	case Scalar::Float64: return 8;
	}
	return 0;
}

bool is_integral(Scalar s) { return s != Scalar::Float32 && s != Scalar::Float64; }

struct Property {
	std::string name;
	Scalar type = Scalar::Float32;
	bool is_list = false;
	Scalar count_type = Scalar::UInt8;
};

struct Element {
	std::string name;
	std::size_t count = 0;
	std::vector<Property> properties;
};

enum class Encoding { Ascii, BinaryLE };

struct Header {
	Encoding encoding = Encoding::Ascii;
	std::vector<Element> elements;
	std::size_t body_offset = 0;
};

std::vector<std::string_view> split_ws(std::string_view line) {
	std::vector<std::string_view> out;
	std::size_t i = 0;
	while (i < line.size()) {
		while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
		std::size_t j = i;
		while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
		if (j > i) out.push_back(line.substr(i, j - i));
		i = j;
	}
	return out;
}

std::size_t parse_count(std::string_view tok, std::size_t offset) {
	std::size_t v = 0;
	auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
	if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError("invalid element count '" + std::string(tok) + "'", offset);
	return v;
}

Header parse_header(std::string_view bytes) {
	Header header;
	std::size_t pos = 0;
	bool saw_format = false;
	bool first = true;
	for (;;) {
		const std::size_t eol = bytes.find('\n', pos);
		if (eol == std::string_view::npos) throw ParseError("PLY header is not terminated by end_header", pos);
		const std::string_view line = bytes.substr(pos, eol - pos);
		const std::size_t line_offset = pos;
		pos = eol + 1;
		const auto tok = split_ws(line);
		if (first) {
			if (tok.size() != 1 || tok[0] != "ply") throw ParseError("missing 'ply' magic", line_offset);
			first = false;
			continue;
		}
		if (tok.empty()) continue;
		if (tok[0] == "comment" || tok[0] == "obj_info") continue;
		if (tok[0] == "format") {
			if (tok.size() != 3) throw ParseError("malformed format line", line_offset);
			if (tok[1] == "ascii") header.encoding = Encoding::Ascii;
			else if (tok[1] == "binary_little_endian") header.encoding = Encoding::BinaryLE;
			else if (tok[1] == "binary_big_endian") throw UnsupportedFormat("big-endian PLY bodies are not supported");
			else throw ParseError("unknown PLY format '" + std::string(tok[1]) + "'", line_offset);
			saw_format = true;
		} else if (tok[0] == "element") {
			if (tok.size() != 3) throw ParseError("malformed element line", line_offset);
			header.elements.push_back({std::string(tok[1]), parse_count(tok[2], line_offset), {}});
		} else if (tok[0] == "property") {
			if (header.elements.empty()) throw ParseError("property declared before any element", line_offset);
			Property prop;
			if (tok.size() == 5 && tok[1] == "list") {
				auto count_type = scalar_from_name(tok[2]);
				auto item_type = scalar_from_name(tok[3]);
				if (!count_type || !item_type || !is_integral(*count_type)) throw ParseError("invalid list property types", line_offset);
				prop = {std::string(tok[4]), *item_type, true, *count_type};
			} else if (tok.size() == 3) {
				auto type = scalar_from_name(tok[1]);
				if (!type) throw ParseError("unknown property type '" + std::string(tok[1]) + "'", line_offset);
				prop = {std::string(tok[2]), *type, false, Scalar::UInt8};
			} else {
				throw ParseError("malformed property line", line_offset);
			}
			header.elements.back().properties.push_back(std::move(prop));
		} else if (tok[0] == "end_header") {
			if (!saw_format) throw ParseError("missing format line", line_offset);
			header.body_offset = pos;
			return header;
		} else {
			throw ParseError("unexpected header keyword '" + std::string(tok[0]) + "'", line_offset);
		}
	}
}

/// Reads scalar values from either body encoding.
class BodyReader {
public:
	BodyReader(std::string_view bytes, std::size_t offset, Encoding enc) : bytes_(bytes), pos_(offset), enc_(enc) {}

	double read(Scalar type) { return enc_ == Encoding::Ascii ? read_ascii(type) : read_binary(type); }

	std::size_t offset() const { return pos_; }

private:
	double read_ascii(Scalar type) {
		while (pos_ < bytes_.size() && std::strchr(" \t\r\n", bytes_[pos_]) != nullptr) ++pos_;
		if (pos_ >= bytes_.size()) throw ParseError("unexpected end of PLY body", pos_);
		const char* begin = bytes_.data() + pos_;
		const char* end = bytes_.data() + bytes_.size();
		double value = 0;
		std::from_chars_result res{};
		if (is_integral(type)) {
			long long iv = 0;
			res = std::from_chars(begin, end, iv);
			value = static_cast<double>(iv);
		} else {
			res = std::from_chars(begin, end, value);
		}
		if (res.ec != std::errc{} || (res.ptr < end && std::strchr(" \t\r\n", *res.ptr) == nullptr))
			throw ParseError("invalid number in PLY body", pos_);
		pos_ = static_cast<std::size_t>(res.ptr - bytes_.data());
		return value;
	}

	template <class T>
	T load() {
		T v;
		std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
		pos_ += sizeof(T);
		return v;
	}

	double read_binary(Scalar type) {
		static_assert(std::endian::native == std::endian::little, "binary PLY reader assumes a little-endian host");
		if (pos_ + scalar_size(type) > bytes_.size()) throw ParseError("truncated binary PLY body", pos_);
		switch (type) {
		case Scalar::Int8: return load<std::int8_t>();
		case Scalar::UInt8: return load<std::uint8_t>();
		case Scalar::Int16: return load<std::int16_t>();
		case Scalar::UInt16: return load<std::uint16_t>();
		case Scalar::Int32: return load<std::int32_t>();
		case Scalar::UInt32: return load<std::uint32_t>();
		case Scalar::Float32: return load<float>();
		case Scalar::Float64: return load<double>();
		}
		return 0;
	}

	std::string_view bytes_;
	std::size_t pos_;
	Encoding enc_;
};

int find_property(const Element& e, std::string_view name) {
	for (std::size_t i = 0; i < e.properties.size(); ++i)
		if (e.properties[i].name == name) return static_cast<int>(i);
	return -1;
}

} // namespace

IndexedMesh parse_ply(std::string_view bytes) {
	const Header header = parse_header(bytes);
	BodyReader reader(bytes, header.body_offset, header.encoding);
	IndexedMesh mesh;
	bool saw_vertex = false;

	for (const Element& element : header.elements) {
		if (element.name == "vertex") {
			const int ix = find_property(element, "x"), iy = find_property(element, "y"), iz = find_property(element, "z");
			if (ix < 0 || iy < 0 || iz < 0) throw ParseError("vertex element lacks x/y/z properties", header.body_offset);
			for (int i : {ix, iy, iz})
				if (element.properties[i].is_list) throw ParseError("vertex coordinate declared as list", header.body_offset);
			saw_vertex = true;
			mesh.vertices.points.reserve(element.count);
			for (std::size_t v = 0; v < element.count; ++v) {
				const std::size_t start = reader.offset();
				double coords[3] = {0, 0, 0};
				for (std::size_t p = 0; p < element.properties.size(); ++p) {
					const Property& prop = element.properties[p];
					if (prop.is_list) {
						const auto n = static_cast<std::size_t>(reader.read(prop.count_type));
						for (std::size_t k = 0; k < n; ++k) reader.read(prop.type);
						continue;
					}
					const double value = reader.read(prop.type);
					if (static_cast<int>(p) == ix) coords[0] = value;
					else if (static_cast<int>(p) == iy) coords[1] = value;
					else if (static_cast<int>(p) == iz) coords[2] = value;
				}
				if (!std::isfinite(coords[0]) || !std::isfinite(coords[1]) || !std::isfinite(coords[2]))
					throw ParseError("non-finite vertex coordinate", start);
				mesh.vertices.points.push_back({coords[0], coords[1], coords[2]});
			}
		} else if (element.name == "face") {
			int list_index = find_property(element, "vertex_indices");
			if (list_index < 0) list_index = find_property(element, "vertex_index");
			if (list_index < 0 || !element.properties[list_index].is_list)
				throw ParseError("face element lacks a vertex_indices list", header.body_offset);
			mesh.triangles.reserve(element.count);
			std::vector<PointId> polygon;
			for (std::size_t f = 0; f < element.count; ++f) {
				const std::size_t start = reader.offset();
				for (std::size_t p = 0; p < element.properties.size(); ++p) {
					const Property& prop = element.properties[p];
					if (!prop.is_list) {
						reader.read(prop.type);
						continue;
					}
					const auto n = static_cast<std::size_t>(reader.read(prop.count_type));
					if (static_cast<int>(p) != list_index) {
						for (std::size_t k = 0; k < n; ++k) reader.read(prop.type);
						continue;
					}
					polygon.clear();
					for (std::size_t k = 0; k < n; ++k) {
						const double idx = reader.read(prop.type);
						if (idx < 0) throw ParseError("negative vertex index", start);
						polygon.push_back(static_cast<PointId>(idx));
					}
				}
				if (polygon.size() < 3) throw ParseError("face with fewer than 3 vertices", start);
				for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
					const std::array<PointId, 3> tri{polygon[0], polygon[k], polygon[k + 1]};
					if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) continue;
					mesh.triangles.push_back(tri);
				}
			}
		} else {
			for (std::size_t r = 0; r < element.count; ++r)
				for (const Property& prop : element.properties) {
					const std::size_t n = prop.is_list ? static_cast<std::size_t>(reader.read(prop.count_type)) : 1;
					for (std::size_t k = 0; k < n; ++k) reader.read(prop.type);
				}
		}
	}
	if (!saw_vertex) throw ParseError("PLY has no vertex element", header.body_offset);
	for (const auto& tri : mesh.triangles)
		for (PointId idx : tri)
			if (idx >= mesh.vertices.size()) throw ParseError("face index " + std::to_string(idx) + " out of range", header.body_offset);
	return mesh;
}

namespace {

void append_number(std::string& out, double v) {
	char buf[32];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
	out.append(buf, ptr);
}

} // namespace

std::string write_ply_ascii(const IndexedMesh& mesh) {
	std::string out = "ply\nformat ascii 1.0\nelement vertex " + std::to_string(mesh.vertices.size()) +
	                  "\nproperty double x\nproperty double y\nproperty double z\nelement face " +
	                  std::to_string(mesh.triangles.size()) + "\nproperty list uchar uint vertex_indices\nend_header\n";
	for (const Point3& p : mesh.vertices.points) {
		append_number(out, p.x);
		out += ' ';
		append_number(out, p.y);
		out += ' ';
		append_number(out, p.z);
		out += '\n';
	}
	for (const auto& t : mesh.triangles) out += "3 " + std::to_string(t[0]) + ' ' + std::to_string(t[1]) + ' ' + std::to_string(t[2]) + '\n';
	return out;
}

} // namespace topoprint
