#pragma once

#include <bit>
#include <cstdint>
#include <unordered_map>

#include "topoprint/types.hpp"

namespace topoprint::detail {

/// Interns points by exact coordinate equality (+0 and -0 compare equal).
class VertexPool {
public:
	explicit VertexPool(std::vector<Point3>& storage) : storage_(storage) {
		for (PointId i = 0; i < storage_.size(); ++i) index_.try_emplace(key(storage_[i]), i);
	}

	PointId intern(const Point3& p) {
		auto [it, inserted] = index_.try_emplace(key(p), static_cast<PointId>(storage_.size()));
		if (inserted) storage_.push_back(p);
		return it->second;
	}

private:
	struct Key {
		std::uint64_t x, y, z;
		bool operator==(const Key&) const = default;
	};
	struct KeyHash {
		std::size_t operator()(const Key& k) const {
			std::uint64_t h = k.x * 0x9E3779B97F4A7C15ull;
			h ^= k.y + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
			h ^= k.z + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
			return static_cast<std::size_t>(h);
		}
	};

	static Key key(const Point3& p) {
		return {std::bit_cast<std::uint64_t>(p.x + 0.0), std::bit_cast<std::uint64_t>(p.y + 0.0),
		        std::bit_cast<std::uint64_t>(p.z + 0.0)};
	}

	std::vector<Point3>& storage_;
	std::unordered_map<Key, PointId, KeyHash> index_;
};

} // namespace topoprint::detail
