#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace topoprint {

/// Union-find with path halving and union by size.
class DisjointSets {
public:
	explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), std::uint32_t{0}); }

	std::uint32_t find(std::uint32_t x) {
		while (parent_[x] != x) {
			parent_[x] = parent_[parent_[x]];
			x = parent_[x];
		}
		return x;
	}

	bool unite(std::uint32_t a, std::uint32_t b) {
		a = find(a);
		b = find(b);
		if (a == b) return false;
		if (size_[a] < size_[b]) std::swap(a, b);
		parent_[b] = a;
		size_[a] += size_[b];
		return true;
	}

	std::size_t size() const { return parent_.size(); }

	/// Dense labels 0..k-1, numbered in order of each set's smallest element.
	std::vector<std::uint32_t> labels() {
		std::vector<std::uint32_t> label(parent_.size(), UINT32_MAX), out(parent_.size());
		std::uint32_t next = 0;
		for (std::uint32_t i = 0; i < parent_.size(); ++i) {
			const std::uint32_t r = find(i);
			if (label[r] == UINT32_MAX) label[r] = next++;
			out[i] = label[r];
		}
		return out;
	}

private:
	std::vector<std::uint32_t> parent_;
	std::vector<std::uint32_t> size_;
};

} // namespace topoprint
