#include <charconv>
#include <cmath>
#include <cstring>

#include "topoprint/error.hpp"
#include "topoprint/ingest.hpp"
#include "vertex_pool.hpp"

namespace topoprint {
namespace {

constexpr std::size_t kBinaryHeader = 80;
constexpr std::size_t kBinaryRecord = 50;

class MeshBuilder {
public:
	MeshBuilder() : pool_(mesh_.vertices.points) {}

	void add(const Point3& a, const Point3& b, const Point3& c) {
		// Zero-length edges would produce a triangle with repeated indices.
		if (a == b || b == c || a == c) return;
		mesh_.triangles.push_back({pool_.intern(a), pool_.intern(b), pool_.intern(c)});
	}

	IndexedMesh take() { return std::move(mesh_); }

private:
	IndexedMesh mesh_;
	detail::VertexPool pool_;
};

IndexedMesh parse_binary(std::string_view bytes) {
	std::uint32_t count = 0;
	std::memcpy(&count, bytes.data() + kBinaryHeader, sizeof(count));
	const std::size_t expected = kBinaryHeader + 4 + std::size_t{count} * kBinaryRecord;
	if (bytes.size() != expected)
		throw ParseError("binary STL declares " + std::to_string(count) + " triangles but body holds " +
		                     std::to_string((bytes.size() - kBinaryHeader - 4) / kBinaryRecord),
		                 std::min(bytes.size(), expected));
	MeshBuilder builder;
	for (std::uint32_t t = 0; t < count; ++t) {
		const std::size_t record = kBinaryHeader + 4 + std::size_t{t} * kBinaryRecord;
		Point3 corners[3];
		for (int c = 0; c < 3; ++c) {
			float xyz[3];
			std::memcpy(xyz, bytes.data() + record + 12 + 12 * c, sizeof(xyz));
			if (!std::isfinite(xyz[0]) || !std::isfinite(xyz[1]) || !std::isfinite(xyz[2]))
				throw ParseError("non-finite STL coordinate", record + 12 + 12 * c);
			corners[c] = {xyz[0], xyz[1], xyz[2]};
		}
		builder.add(corners[0], corners[1], corners[2]);
	}
	return builder.take();
}

class Tokenizer {
public:
	explicit Tokenizer(std::string_view text) : text_(text) {}

	std::string_view next() {
		while (pos_ < text_.size() && std::strchr(" \t\r\n", text_[pos_]) != nullptr) ++pos_;
		start_ = pos_;
		while (pos_ < text_.size() && std::strchr(" \t\r\n", text_[pos_]) == nullptr) ++pos_;
		return text_.substr(start_, pos_ - start_);
	}

	std::string_view rest_of_line() {
		const std::size_t eol = text_.find('\n', pos_);
		const std::size_t end = eol == std::string_view::npos ? text_.size() : eol;
		auto out = text_.substr(pos_, end - pos_);
		pos_ = end;
		return out;
	}

	double number() {
		const auto tok = next();
		double v = 0;
		auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
		if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v))
			throw ParseError("invalid number '" + std::string(tok) + "' in ASCII STL", start_);
		return v;
	}

	void expect(std::string_view word) {
		const auto tok = next();
		if (tok != word) throw ParseError("expected '" + std::string(word) + "' but found '" + std::string(tok) + "'", start_);
	}

	std::size_t offset() const { return start_; }

private:
	std::string_view text_;
	std::size_t pos_ = 0, start_ = 0;
};

IndexedMesh parse_ascii(std::string_view bytes) {
	Tokenizer tok(bytes);
	tok.expect("solid");
	tok.rest_of_line();
	MeshBuilder builder;
	for (;;) {
		const auto word = tok.next();
		if (word == "endsolid") break;
		if (word.empty()) throw ParseError("ASCII STL ended without endsolid", tok.offset());
		if (word != "facet") throw ParseError("expected 'facet' but found '" + std::string(word) + "'", tok.offset());
		tok.expect("normal");
		for (int i = 0; i < 3; ++i) tok.number();
		tok.expect("outer");
		tok.expect("loop");
		Point3 corners[3];
		for (auto& c : corners) {
			tok.expect("vertex");
			c.x = tok.number();
			c.y = tok.number();
			c.z = tok.number();
		}
		tok.expect("endloop");
		tok.expect("endfacet");
		builder.add(corners[0], corners[1], corners[2]);
	}
	return builder.take();
}

bool looks_ascii(std::string_view bytes) {
	std::size_t i = 0;
	while (i < bytes.size() && std::strchr(" \t\r\n", bytes[i]) != nullptr) ++i;
	return bytes.substr(i, 5) == "solid";
}

} // namespace

IndexedMesh parse_stl(std::string_view bytes) {
	if (bytes.size() >= kBinaryHeader + 4) {
		std::uint32_t count = 0;
		std::memcpy(&count, bytes.data() + kBinaryHeader, sizeof(count));
		// Binary files may also start with "solid"; an exact size match wins.
		if (bytes.size() == kBinaryHeader + 4 + std::size_t{count} * kBinaryRecord) return parse_binary(bytes);
	}
	if (looks_ascii(bytes)) return parse_ascii(bytes);
	if (bytes.size() < kBinaryHeader + 4) throw ParseError("STL shorter than the 84-byte binary preamble", bytes.size());
	return parse_binary(bytes);
}

} // namespace topoprint
