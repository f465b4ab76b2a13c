#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "topoprint/bench.hpp"
#include "topoprint/error.hpp"
#include "topoprint/ingest.hpp"
#include "topoprint/logging.hpp"

namespace topoprint::cli {
namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// Options shared by `analyze` and `bench`.
struct PipelineOptions {
	std::string input;
	std::optional<double> height;
	std::optional<double> z_res;
	std::optional<int> slices;
	double overlap = kDefaultOverlap;
	double xy_res = 0.1;
	int margin_cells = kDefaultMarginCells;
	std::optional<double> densify;
	unsigned threads = 0;
	std::size_t simplex_budget = kDefaultSimplexBudget;
	std::size_t cell_budget = kDefaultCellBudget;

	void attach(CLI::App& app) {
		app.add_option("--input", input, "PLY or STL model")->required();
		app.add_option("--height", height, "scale the model to this height (cm)");
		auto* zres = app.add_option("--z-res", z_res, "printer layer thickness (cm)");
		auto* count = app.add_option("--slices", slices, "number of slices");
		zres->excludes(count);
		app.add_option("--overlap", overlap, "slice overlap (cm)")->capture_default_str();
		app.add_option("--xy-res", xy_res, "printer xy resolution (cm)")->capture_default_str();
		app.add_option("--margin-cells", margin_cells, "empty-space margin in grid cells")->capture_default_str();
		app.add_option("--densify", densify, "subdivide mesh triangles until edges are at most this long (cm)");
		app.add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
		app.add_option("--simplex-budget", simplex_budget, "max simplices per component complex")->capture_default_str();
		app.add_option("--cell-budget", cell_budget, "max empty-space grid cells")->capture_default_str();
	}

	AnalysisConfig config() const {
		AnalysisConfig c;
		c.target_height = height;
		if (slices) c.layers = SliceCount{*slices};
		else c.layers = LayerThickness{z_res.value_or(0.33)};
		c.overlap = overlap;
		c.xy_res = xy_res;
		c.margin_cells = margin_cells;
		c.densify_max_edge = densify;
		c.threads = threads;
		c.simplex_budget = simplex_budget;
		c.cell_budget = cell_budget;
		return c;
	}
};

IndexedMesh load_input(const std::string& path) {
	try {
		return load_mesh(path);
	} catch (const Error& e) {
		throw StageError("ingest", path + ": " + e.what());
	}
}

void write_file(const std::string& path, const std::string& contents) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw Error("cannot write '" + path + "'");
	out << contents;
	if (!out) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw Error("cannot open '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

std::string timings_table(const StageTimings& t) {
	return fmt::format("timings ({} threads):\n  slicing      {:10.3f} ms\n  mapper       {:10.3f} s\n  persistence  {:10.3f} s\n  total        {:10.3f} s\n",
	                   t.threads, t.slicing_ms, t.mapper_s, t.persistence_s, t.total_s);
}

} // namespace

std::string format_report(const AnalysisBundle& b) {
	std::string out;
	const GlobalComponents filled = global_components(b.filled);
	const GlobalComponents empty = global_components(b.empty);
	std::size_t inside = 0, total_holes = 0;
	for (const auto& n : b.empty.nodes) inside += n.region == Region::Inside;
	for (const auto& n : b.filled.nodes) total_holes += static_cast<std::size_t>(n.hole_count);

	out += fmt::format("points: {}\n", b.points.size());
	out += fmt::format("slices: {}\n", b.filled_slices.size());
	out += fmt::format("filled graph: {} nodes, {} edges, {} components, {} independent cycles\n", b.filled.nodes.size(),
	                   b.filled.edges.size(), filled.count, cycle_rank(b.filled));
	out += fmt::format("empty graph: {} nodes, {} edges, {} components ({} nodes outside, {} inside)\n", b.empty.nodes.size(),
	                   b.empty.edges.size(), empty.count, b.empty.nodes.size() - inside, inside);
	out += fmt::format("holes: {} total\n", total_holes);
	for (const auto& n : b.filled.nodes)
		if (n.hole_count > 0)
			out += fmt::format("  node {} (slice {}, component {}): {} hole{}\n", n.id, n.slice_index, n.component_id, n.hole_count,
			                   n.hole_count == 1 ? "" : "s");
	out += fmt::format("watertight: {}\n", b.watertight ? "yes" : "no");
	return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
	configure_logging();
	CLI::App app{"Topological printability analysis of point-cloud models", "topoprint"};
	app.require_subcommand(1);

	PipelineOptions analyze_opts;
	std::string out_path, diagrams_path;
	bool show_timings = false;
	auto* analyze_cmd = app.add_subcommand("analyze", "build the filled and empty-space Mapper graphs and write a bundle");
	analyze_opts.attach(*analyze_cmd);
	analyze_cmd->add_option("--out", out_path, "bundle JSON path");
	analyze_cmd->add_option("--diagrams", diagrams_path, "write per-node persistence diagrams as JSON");
	analyze_cmd->add_flag("--timings", show_timings, "print per-stage timings (the bundle is unaffected)");

	PipelineOptions bench_opts;
	std::string sweep_text, bench_out = "bench";
	int repetitions = 3;
	auto* bench_cmd = app.add_subcommand("bench", "time the pipeline over a parameter sweep");
	bench_opts.attach(*bench_cmd);
	bench_cmd->add_option("--bench", sweep_text, "slices | overlap | grid, optionally =v1,v2,...")->required();
	bench_cmd->add_option("--out", bench_out, "output prefix for .csv and .json")->capture_default_str();
	bench_cmd->add_option("--repetitions", repetitions, "timed runs per value (median reported)")->capture_default_str();

	std::string bundle_path;
	auto* validate_cmd = app.add_subcommand("validate", "re-check a bundle's invariants");
	validate_cmd->add_option("bundle", bundle_path, "bundle JSON")->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		out << app.help();
		return kOk;
	} catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << "\n\n" << app.help();
		return kUsage;
	}

	try {
		if (*analyze_cmd) {
			const AnalysisConfig config = analyze_opts.config();
			config.validate();
			const IndexedMesh mesh = load_input(analyze_opts.input);
			const AnalysisBundle bundle = analyze(mesh, config);
			if (!out_path.empty()) write_file(out_path, export_bundle(bundle));
			if (!diagrams_path.empty()) {
				std::string doc = "{";
				for (std::size_t v = 0; v < bundle.diagrams.size(); ++v)
					doc += (v ? "," : "") + fmt::format("\"{}\":", v) + diagram_to_json(bundle.diagrams[v]);
				write_file(diagrams_path, doc + "}\n");
			}
			out << format_report(bundle);
			if (show_timings) out << timings_table(*bundle.timings);
			if (!out_path.empty()) out << "bundle: " << out_path << "\n";
			return kOk;
		}
		if (*bench_cmd) {
			const SweepSpec spec = parse_sweep(sweep_text);
			AnalysisConfig base = bench_opts.config();
			base.validate();
			if (base.densify_max_edge) throw ConfigError("--densify is not supported by bench; densify the mesh first");
			const IndexedMesh mesh = load_input(bench_opts.input);
			const auto records = bench_sweep(mesh.vertices, spec, base, {1, repetitions});
			const std::string csv = sweep_csv(records);
			write_file(bench_out + ".csv", csv);
			write_file(bench_out + ".json", sweep_json(records));
			out << csv;
			return kOk;
		}
		if (*validate_cmd) {
			try {
				const AnalysisBundle bundle = import_bundle(read_file(bundle_path));
				out << "bundle valid: " << bundle.filled.nodes.size() << " filled nodes, " << bundle.empty.nodes.size()
				    << " empty nodes, watertight: " << (bundle.watertight ? "yes" : "no") << "\n";
				return kOk;
			} catch (const Error& e) {
				err << "invalid bundle: " << e.what() << "\n";
				return kFailure;
			}
		}
	} catch (const ConfigError& e) {
		err << "error: " << e.what() << "\n\n" << app.help();
		return kUsage;
	} catch (const Error& e) {
		err << "error: " << e.what() << "\n";
		return kFailure;
	}
	return kUsage;
}

} // namespace topoprint::cli
