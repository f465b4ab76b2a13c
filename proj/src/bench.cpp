#include "topoprint/bench.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "topoprint/error.hpp"

namespace topoprint {
namespace {

double median(std::vector<double> v) {
	std::sort(v.begin(), v.end());
	const std::size_t n = v.size();
	return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

AnalysisConfig config_for(const SweepSpec& spec, double value, const AnalysisConfig& base) {
	AnalysisConfig c = base;
	c.layers = SliceCount{spec.fixed_slices};
	c.overlap = spec.fixed_overlap;
	c.xy_res = spec.fixed_grid;
	switch (spec.parameter) {
	case SweepParameter::Slices: c.layers = SliceCount{static_cast<int>(value)}; break;
	case SweepParameter::Overlap: c.overlap = value; break;
	case SweepParameter::Grid: c.xy_res = value; break;
	}
	return c;
}

} // namespace

std::string_view parameter_name(SweepParameter p) {
	switch (p) {
	case SweepParameter::Slices: return "slices";
	case SweepParameter::Overlap: return "overlap";
	case SweepParameter::Grid: return "grid";
	}
	return "";
}

SweepSpec default_sweep(SweepParameter parameter) {
	SweepSpec s;
	s.parameter = parameter;
	switch (parameter) {
	case SweepParameter::Slices:
		s.values = {8, 16, 32, 64, 128};
		s.fixed_overlap = 0.05;
		s.fixed_grid = 0.15;
		break;
	case SweepParameter::Overlap:
		s.values = {0.025, 0.05, 0.1, 0.2};
		s.fixed_slices = 32;
		s.fixed_grid = 0.15;
		break;
	case SweepParameter::Grid:
		s.values = {0.15, 0.2, 0.25, 0.3, 0.35};
		s.fixed_slices = 32;
		s.fixed_overlap = 0.1;
		break;
	}
	return s;
}

SweepSpec parse_sweep(std::string_view text) {
	const auto eq = text.find('=');
	const std::string_view name = text.substr(0, eq);
	SweepSpec spec;
	if (name == "slices") spec = default_sweep(SweepParameter::Slices);
	else if (name == "overlap") spec = default_sweep(SweepParameter::Overlap);
	else if (name == "grid") spec = default_sweep(SweepParameter::Grid);
	else throw ConfigError("unknown sweep '" + std::string(name) + "' (expected slices, overlap or grid)");
	if (eq == std::string_view::npos) return spec;

	spec.values.clear();
	std::string_view rest = text.substr(eq + 1);
	while (!rest.empty()) {
		const auto comma = rest.find(',');
		const std::string_view tok = rest.substr(0, comma);
		double v = 0;
		auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
		if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ConfigError("invalid sweep value '" + std::string(tok) + "'");
		spec.values.push_back(v);
		if (comma == std::string_view::npos) break;
		rest = rest.substr(comma + 1);
	}
	if (spec.values.empty()) throw ConfigError("sweep '" + std::string(name) + "' lists no values");
	return spec;
}

std::vector<SweepRecord> bench_sweep(const PointCloud& cloud, const SweepSpec& spec, const AnalysisConfig& base,
                                     const BenchOptions& options) {
	std::vector<SweepRecord> records;
	for (double value : spec.values) {
		SweepRecord rec;
		rec.parameter = spec.parameter;
		rec.value = value;
		rec.config = config_for(spec, value, base);
		try {
			for (int w = 0; w < options.warmup; ++w) analyze(cloud, rec.config);
			std::vector<double> slicing, mapper, persistence, total;
			for (int r = 0; r < std::max(1, options.repetitions); ++r) {
				const StageTimings t = *analyze(cloud, rec.config).timings;
				slicing.push_back(t.slicing_ms);
				mapper.push_back(t.mapper_s);
				persistence.push_back(t.persistence_s);
				total.push_back(t.total_s);
				rec.timings.threads = t.threads;
			}
			rec.timings.slicing_ms = median(slicing);
			rec.timings.mapper_s = median(mapper);
			rec.timings.persistence_s = median(persistence);
			rec.timings.total_s = median(total);
		} catch (const Error& e) {
			rec.ok = false;
			rec.error = e.what();
			spdlog::warn("sweep {}={} failed: {}", parameter_name(spec.parameter), value, e.what());
		}
		records.push_back(std::move(rec));
	}
	return records;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
	std::ostringstream out;
	out << "param,value,slicing_ms,mapper_s,persistence_s,total_s,ok,error\n";
	for (const auto& r : records) {
		std::string error = r.error;
		std::replace(error.begin(), error.end(), '"', '\'');
		out << parameter_name(r.parameter) << ',' << r.value << ',' << r.timings.slicing_ms << ',' << r.timings.mapper_s << ','
		    << r.timings.persistence_s << ',' << r.timings.total_s << ',' << (r.ok ? "true" : "false") << ",\"" << error << "\"\n";
	}
	return out.str();
}

std::string sweep_json(const std::vector<SweepRecord>& records) {
	nlohmann::json arr = nlohmann::json::array();
	for (const auto& r : records) {
		nlohmann::json config = {{"overlap", r.config.overlap}, {"xy_res", r.config.xy_res}, {"margin_cells", r.config.margin_cells}};
		if (const auto* s = std::get_if<SliceCount>(&r.config.layers)) config["slices"] = s->count;
		if (r.config.target_height) config["target_height"] = *r.config.target_height;
		arr.push_back({{"param", parameter_name(r.parameter)},
		               {"value", r.value},
		               {"config", config},
		               {"ok", r.ok},
		               {"error", r.error},
		               {"threads", r.timings.threads},
		               {"slicing_ms", r.timings.slicing_ms},
		               {"mapper_s", r.timings.mapper_s},
		               {"persistence_s", r.timings.persistence_s},
		               {"total_s", r.timings.total_s}});
	}
	return arr.dump(2) + "\n";
}

} // namespace topoprint
