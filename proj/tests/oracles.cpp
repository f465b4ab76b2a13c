#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace topoprint::oracles {
namespace {

double dist(const Point2& a, const Point2& b) {
	const double dx = a.x - b.x, dy = a.y - b.y;
	return std::sqrt(dx * dx + dy * dy);
}

/// Z/2 row-echelon basis keyed by each vector's highest set bit.
class RankTracker {
public:
	explicit RankTracker(std::size_t bits) : words_((bits + 63) / 64) {}

	void insert(std::vector<std::uint64_t> v) {
		for (;;) {
			const long top = highest(v);
			if (top < 0) return;
			auto it = basis_.find(top);
			if (it == basis_.end()) {
				basis_.emplace(top, std::move(v));
				return;
			}
			for (std::size_t w = 0; w < words_; ++w) v[w] ^= it->second[w];
		}
	}
	std::vector<std::uint64_t> unit(std::initializer_list<std::size_t> bits) const {
		std::vector<std::uint64_t> v(words_, 0);
		for (std::size_t b : bits) v[b / 64] ^= std::uint64_t{1} << (b % 64);
		return v;
	}
	std::size_t rank() const { return basis_.size(); }

private:
	long highest(const std::vector<std::uint64_t>& v) const {
		for (std::size_t w = words_; w-- > 0;)
			if (v[w]) return static_cast<long>(w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(v[w])));
		return -1;
	}
	std::size_t words_;
	std::map<long, std::vector<std::uint64_t>> basis_;
};

} // namespace

std::vector<BettiStep> betti_sweep(std::span<const Point2> points, double max_scale) {
	const std::size_t n = points.size();
	if (n > 64) throw std::invalid_argument("betti_sweep is limited to 64 points");
	struct Edge {
		double d;
		std::size_t a, b, index;
	};
	std::vector<Edge> edges;
	std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = a + 1; b < n; ++b) {
			const double d = dist(points[a], points[b]);
			if (d <= max_scale) {
				edge_of[{a, b}] = edges.size();
				edges.push_back({d, a, b, edges.size()});
			}
		}
	struct Triangle {
		double d;
		std::size_t e0, e1, e2;
	};
	std::vector<Triangle> triangles;
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = a + 1; b < n; ++b)
			for (std::size_t c = b + 1; c < n; ++c) {
				auto ab = edge_of.find({a, b}), ac = edge_of.find({a, c}), bc = edge_of.find({b, c});
				if (ab == edge_of.end() || ac == edge_of.end() || bc == edge_of.end()) continue;
				triangles.push_back({std::max({edges[ab->second].d, edges[ac->second].d, edges[bc->second].d}), ab->second,
				                     ac->second, bc->second});
			}

	std::set<double> scales{0.0};
	for (const Edge& e : edges) scales.insert(e.d);

	auto sorted_edges = edges;
	std::sort(sorted_edges.begin(), sorted_edges.end(), [](const Edge& x, const Edge& y) { return x.d < y.d; });
	std::sort(triangles.begin(), triangles.end(), [](const Triangle& x, const Triangle& y) { return x.d < y.d; });

	RankTracker d1(std::max<std::size_t>(n, 1)), d2(std::max<std::size_t>(edges.size(), 1));
	std::size_t ei = 0, ti = 0;
	std::vector<BettiStep> out;
	for (double t : scales) {
		for (; ei < sorted_edges.size() && sorted_edges[ei].d <= t; ++ei) d1.insert(d1.unit({sorted_edges[ei].a, sorted_edges[ei].b}));
		for (; ti < triangles.size() && triangles[ti].d <= t; ++ti)
			d2.insert(d2.unit({triangles[ti].e0, triangles[ti].e1, triangles[ti].e2}));
		out.push_back({t, n - d1.rank(), ei - d1.rank() - d2.rank()});
	}
	return out;
}

std::string compare_with_sweep(std::span<const PersistenceInterval> intervals, std::span<const BettiStep> sweep) {
	for (const BettiStep& s : sweep) {
		std::size_t b0 = 0, b1 = 0;
		for (const auto& iv : intervals) {
			if (!iv.alive_at(s.scale)) continue;
			if (iv.dimension == 0) ++b0;
			else if (iv.dimension == 1) ++b1;
		}
		if (b0 != s.b0 || b1 != s.b1)
			return "at scale " + std::to_string(s.scale) + ": intervals give (b0, b1) = (" + std::to_string(b0) + ", " +
			       std::to_string(b1) + "), oracle gives (" + std::to_string(s.b0) + ", " + std::to_string(s.b1) + ")";
	}
	return {};
}

std::vector<std::vector<PointId>> closure_components(std::span<const Point2> points, double epsilon) {
	const std::size_t n = points.size();
	const double e2 = epsilon * epsilon;
	std::vector<int> label(n, -1);
	std::vector<std::vector<PointId>> out;
	for (std::size_t s = 0; s < n; ++s) {
		if (label[s] >= 0) continue;
		const int id = static_cast<int>(out.size());
		out.emplace_back();
		std::vector<std::size_t> stack{s};
		label[s] = id;
		while (!stack.empty()) {
			const std::size_t u = stack.back();
			stack.pop_back();
			out[id].push_back(static_cast<PointId>(u));
			for (std::size_t v = 0; v < n; ++v) {
				if (label[v] >= 0) continue;
				const double dx = points[u].x - points[v].x, dy = points[u].y - points[v].y;
				if (dx * dx + dy * dy <= e2) {
					label[v] = id;
					stack.push_back(v);
				}
			}
		}
		std::sort(out[id].begin(), out[id].end());
	}
	return out;
}

std::size_t distinct_points(const PointCloud& cloud) {
	std::set<std::tuple<double, double, double>> seen;
	for (const Point3& p : cloud.points) seen.insert({p.x, p.y, p.z});
	return seen.size();
}

} // namespace topoprint::oracles
