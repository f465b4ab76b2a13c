#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "topoprint/analysis.hpp"

namespace topoprint {

enum class SweepParameter { Slices, Overlap, Grid };

/// One parameter varied, the other two held fixed.
struct SweepSpec {
	SweepParameter parameter = SweepParameter::Slices;
	std::vector<double> values;
	int fixed_slices = 32;
	double fixed_overlap = 0.05;
	double fixed_grid = 0.15;
};

/// The three runtime sweeps: slices 8-128 (overlap 0.05, grid 0.15),
/// overlap 0.025-0.2 (32 slices, grid 0.15), grid 0.15-0.35 (32 slices, overlap 0.1).
SweepSpec default_sweep(SweepParameter parameter);

/// "slices", "overlap" or "grid", optionally with explicit values: "grid=0.2,0.3".
/// Throws ConfigError on anything else.
SweepSpec parse_sweep(std::string_view text);

std::string_view parameter_name(SweepParameter p);

struct BenchOptions {
	int warmup = 1;
	int repetitions = 3;
};

struct SweepRecord {
	SweepParameter parameter = SweepParameter::Slices;
	double value = 0;
	AnalysisConfig config;
	/// Per-stage medians over the timed repetitions.
	StageTimings timings;
	bool ok = true;
	std::string error;
};

/// `base` supplies everything the sweep does not set (height, margins, budgets, threads).
/// A value that violates a precondition yields a failed record and the sweep continues.
std::vector<SweepRecord> bench_sweep(const PointCloud& cloud, const SweepSpec& spec, const AnalysisConfig& base,
                                     const BenchOptions& options = {});

/// Columns: param,value,slicing_ms,mapper_s,persistence_s,total_s (plus ok,error).
std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string sweep_json(const std::vector<SweepRecord>& records);

} // namespace topoprint
