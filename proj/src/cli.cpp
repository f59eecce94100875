#include "trademap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "trademap/analysis.hpp"
#include "trademap/csv.hpp"
#include "trademap/embedding.hpp"
#include "trademap/error.hpp"
#include "trademap/graph.hpp"
#include "trademap/ingest.hpp"
#include "trademap/io.hpp"
#include "trademap/plot.hpp"
#include "trademap/spectral.hpp"
#include "trademap/synth.hpp"

namespace trademap::cli {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Schema:
    case ErrorCode::Parse:
    case ErrorCode::Io:
    case ErrorCode::Lookup:
    case ErrorCode::Ambiguity:
      return kParse;
    case ErrorCode::NoData:
    case ErrorCode::DegenerateRoster:
    case ErrorCode::TooSmall:
    case ErrorCode::InsufficientSpectrum:
      return kEmptyRoster;
    case ErrorCode::Connectivity:
    case ErrorCode::IsolatedVertex:
      return kDisconnected;
    case ErrorCode::Convergence:
      return kNoConvergence;
    default:
      return kUsage;
  }
}

namespace {

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {}
  void info(const std::string& msg) { err_ << "[info] " << msg << '\n'; }
  void warn(const std::string& msg) { err_ << "[warn] " << msg << '\n'; }
  void error(const std::string& msg) { err_ << "[error] " << msg << '\n'; }

 private:
  std::ostream& err_;
};

std::vector<std::string> split_codes(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    const auto t = csv::trim(current);
    if (!t.empty()) out.emplace_back(t);
    current.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == ' ' || c == '\t' || c == ';')
      flush();
    else
      current.push_back(c);
  }
  flush();
  return out;
}

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string fmt(double v) { return csv::format_double(v); }

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  return out;
}

// Writes through `fn` to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  auto out = open_output(path);
  fn(out);
}

struct PipelineArgs {
  std::string input;
  std::optional<int> year;
  std::string policy = "drop-incomplete";
  std::string reporter_col = "reporter";
  std::string partner_col = "partner";
  std::string year_col = "year";
  std::string value_col = "export_value";
  std::string reverse_value_col;
  std::string delimiter = ",";
  double missing_sentinel = -9.0;
  std::string subset;
  std::string subset_file;
  std::string labels;
  std::size_t dims = 2;
  double edge_threshold = 0.0;
  double trivial_tol = kTrivialTolerance;
  bool drop_isolated = false;
  bool largest_component = false;
  std::string coords;  // analysis-only commands
};

void add_pipeline_options(CLI::App* sub, PipelineArgs& a) {
  sub->add_option("--input", a.input, "Dyadic trade CSV");
  sub->add_option("--year", a.year, "Year to extract");
  sub->add_option("--policy", a.policy, "Missing-data policy")
      ->check(CLI::IsMember({"drop-incomplete", "zero-fill"}))
      ->capture_default_str();
  sub->add_option("--reporter-col", a.reporter_col, "Column holding the exporting country")->capture_default_str();
  sub->add_option("--partner-col", a.partner_col, "Column holding the importing country")->capture_default_str();
  sub->add_option("--year-col", a.year_col, "Column holding the year")->capture_default_str();
  sub->add_option("--value-col", a.value_col, "Column holding reporter -> partner exports")->capture_default_str();
  sub->add_option("--reverse-value-col", a.reverse_value_col,
                  "Optional column holding partner -> reporter exports on the same row");
  sub->add_option("--delimiter", a.delimiter, "Field delimiter (single character)")->capture_default_str();
  sub->add_option("--missing-sentinel", a.missing_sentinel, "Value marking a missing dyad")->capture_default_str();
  sub->add_option("--subset", a.subset, "Comma-separated country codes to restrict to");
  sub->add_option("--subset-file", a.subset_file, "File listing country codes to restrict to");
  sub->add_option("--labels", a.labels, "code,label side file");
  sub->add_option("--dims", a.dims, "Embedding dimension")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--edge-threshold", a.edge_threshold, "Affinity weights at or below this are treated as absent")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--trivial-tol", a.trivial_tol, "Eigenvalues at or below this are trivial")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_flag("--drop-isolated", a.drop_isolated, "Drop countries with zero total trade");
  sub->add_flag("--largest-component", a.largest_component, "Embed only the largest connected component");
}

struct PipelineResult {
  FlowMatrix flow;
  AffinityMatrix aff;
  LaplacianMatrix lap;
  Spectrum spectrum;
  Embedding emb;
};

std::map<std::string, std::string> load_labels(const std::string& path) {
  return path.empty() ? std::map<std::string, std::string>{} : read_code_map(path);
}

PipelineResult run_pipeline(const PipelineArgs& a, Log& log) {
  if (a.input.empty()) throw Error(ErrorCode::InvalidArgument, "--input (or --coords) is required");
  if (!a.year) throw Error(ErrorCode::InvalidArgument, "--year is required");
  if (a.delimiter.size() != 1) throw Error(ErrorCode::InvalidArgument, "--delimiter must be a single character");
  const auto policy = parse_policy(a.policy);
  if (!policy) throw Error(ErrorCode::InvalidArgument, "unknown policy '" + a.policy + "'");

  CsvSchema schema;
  schema.reporter = a.reporter_col;
  schema.partner = a.partner_col;
  schema.year = a.year_col;
  schema.export_value = a.value_col;
  if (!a.reverse_value_col.empty()) schema.reverse_value = a.reverse_value_col;
  schema.delimiter = a.delimiter.front();
  schema.missing_sentinel = a.missing_sentinel;

  const ParsedDyads parsed = read_dyadic_csv(a.input, schema);
  log.info("read " + std::to_string(parsed.records.size()) + " dyad records from " + a.input);
  if (parsed.self_dyads_dropped)
    log.warn("dropped " + std::to_string(parsed.self_dyads_dropped) + " self-dyad records");

  FlowMatrix flow = build_flow_matrix(parsed.records, *a.year, MissingPolicy::ZeroFill).flow;
  log.info("year " + std::to_string(*a.year) + ": " + std::to_string(flow.size()) + " countries, " +
           std::to_string(flow.missing_count()) + " missing dyads");

  std::vector<std::string> subset = split_codes(a.subset);
  if (!a.subset_file.empty()) {
    std::ifstream in(a.subset_file);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + a.subset_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    for (auto& c : split_codes(buf.str())) subset.push_back(std::move(c));
  }
  if (!subset.empty()) {
    flow = select_subgraph(flow, subset);
    log.info("restricted to subset of " + std::to_string(flow.size()) + " countries");
  }

  if (*policy == MissingPolicy::DropIncomplete) {
    FlowBuild built = drop_incomplete(flow);
    if (!built.dropped.empty())
      log.info("drop-incomplete removed " + std::to_string(built.dropped.size()) + " countries: " +
               join(built.dropped));
    flow = std::move(built.flow);
  } else if (flow.missing_count()) {
    log.warn("zero-fill: " + std::to_string(flow.missing_count()) + " missing dyads treated as zero");
  }
  flow = flow.with_labels(load_labels(a.labels));

  auto make_affinity = [&](const FlowMatrix& f) {
    AffinityMatrix aff = affinity(f);
    return a.edge_threshold > 0.0 ? prune_edges(aff, a.edge_threshold) : aff;
  };
  AffinityMatrix aff = make_affinity(flow);

  if (a.drop_isolated) {
    const auto isolated = isolated_vertices(aff);
    if (!isolated.empty()) {
      std::vector<std::string> names;
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < flow.size(); ++i) {
        if (std::find(isolated.begin(), isolated.end(), i) != isolated.end())
          names.push_back(flow.roster().code(i));
        else
          keep.push_back(i);
      }
      log.warn("dropping " + std::to_string(names.size()) + " isolated countries: " + join(names));
      flow = restrict_to(flow, keep);
      aff = make_affinity(flow);
    }
  }

  const Components components = connected_components(aff, a.edge_threshold);
  if (components.size() > 1) {
    if (!a.largest_component)
      throw Error(ErrorCode::Connectivity,
                  "trade graph has " + std::to_string(components.size()) +
                      " connected components; use --largest-component or --drop-isolated");
    const auto keep = largest_component(components);
    log.warn("restricting to the largest of " + std::to_string(components.size()) + " components (" +
             std::to_string(keep.size()) + " of " + std::to_string(flow.size()) + " countries)");
    flow = restrict_to(flow, keep);
    aff = make_affinity(flow);
  }
  if (flow.size() < 3)
    throw Error(ErrorCode::TooSmall, "only " + std::to_string(flow.size()) + " countries left to embed");

  LaplacianMatrix lap = normalized_laplacian(aff);
  Spectrum spectrum = symmetric_eigen(lap.values);
  Embedding emb = embed(lap, spectrum, {a.dims, true, a.trivial_tol});

  std::vector<std::string> used;
  for (double v : emb.eigenvalues_used) used.push_back(fmt(v));
  log.info("embedded " + std::to_string(emb.size()) + " countries; eigenvalues used " + join(used, " ") +
           "; spectral gap " + fmt(emb.spectral_gap) + "; solver residual " + fmt(spectrum.residual_bound));
  if (emb.degeneracy_flag)
    log.warn("near-degenerate eigenvalues around the selected pair; coordinates are unique only up to rotation");
  return {std::move(flow), std::move(aff), std::move(lap), std::move(spectrum), std::move(emb)};
}

Embedding load_embedding(const PipelineArgs& a, Log& log) {
  if (a.coords.empty()) return run_pipeline(a, log).emb;
  Embedding emb = read_coordinates_csv(a.coords);
  if (!a.labels.empty()) emb.roster = emb.roster.with_labels(read_code_map(a.labels));
  log.info("loaded " + std::to_string(emb.size()) + " coordinates from " + a.coords);
  return emb;
}

struct PlotArgs {
  std::string color_file;
  std::string label_mode = "code";
  int width = 800;
  int height = 800;
  double margin = 0.08;
};

void add_plot_options(CLI::App* sub, PlotArgs& p) {
  sub->add_option("--color-file", p.color_file, "code,color-group side file (display only)");
  sub->add_option("--label-mode", p.label_mode, "Marker labels")
      ->check(CLI::IsMember({"code", "full-name", "none"}))
      ->capture_default_str();
  sub->add_option("--width", p.width, "SVG width in pixels")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--height", p.height, "SVG height in pixels")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--margin", p.margin, "Margin as a fraction of the canvas")
      ->check(CLI::Range(0.0, 0.49))
      ->capture_default_str();
}

PlotSpec to_spec(const PlotArgs& p) {
  PlotSpec spec;
  spec.width = p.width;
  spec.height = p.height;
  spec.margin_fraction = p.margin;
  spec.label_mode = p.label_mode == "none"        ? LabelMode::None
                    : p.label_mode == "full-name" ? LabelMode::FullName
                                                  : LabelMode::Code;
  if (!p.color_file.empty()) spec.color_file = p.color_file;
  return spec;
}

struct SynthArgs {
  std::uint64_t seed = 1;
  std::size_t clusters = 2;
  std::size_t n = 10;
  double spread = 1.0;
  double separation_ratio = 10.0;
  double noise = 0.0;
  std::size_t repeat = 1;
  double mass_min = 1.0;
  double mass_max = 10.0;
  double gravity = 1.0;
  std::size_t threads = 1;
  std::string scenario_out;
  std::string details;
};

// Regular polygon of cluster centers with side length `separation`.
std::vector<Point2> cluster_centers(std::size_t clusters, double separation) {
  if (clusters == 1) return {{0.0, 0.0}};
  const double radius = separation / (2.0 * std::sin(std::numbers::pi / static_cast<double>(clusters)));
  std::vector<Point2> centers;
  for (std::size_t c = 0; c < clusters; ++c) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(clusters);
    centers.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  return centers;
}

struct SynthRun {
  std::uint64_t seed = 0;
  RecoveryScore score;
  std::optional<Error> error;
};

int cmd_synth(const SynthArgs& a, std::ostream& out, Log& log) {
  const auto centers = cluster_centers(a.clusters, a.separation_ratio * a.spread);
  for (const auto& w : scenario_warnings(centers, a.spread)) log.warn(w);
  const MassRange masses{a.mass_min, a.mass_max};

  auto run_one = [&](std::uint64_t seed) {
    SynthRun run;
    run.seed = seed;
    try {
      SyntheticScenario s = planted_cluster_scenario(seed, a.n, centers, a.spread, masses);
      s.gravity_constant = a.gravity;
      const Embedding emb = compose_map(gravity_flows(s, a.noise));
      run.score = recovery_score(s, emb);
    } catch (const Error& e) {
      run.error = e;
    }
    return run;
  };

  if (!a.scenario_out.empty()) {
    SyntheticScenario s = planted_cluster_scenario(a.seed, a.n, centers, a.spread, masses);
    s.gravity_constant = a.gravity;
    auto f = open_output(a.scenario_out);
    write_scenario_csv(f, s);
  }

  std::vector<SynthRun> runs(a.repeat);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < a.repeat; r = next++) runs[r] = run_one(a.seed + r);
  };
  const std::size_t threads = std::clamp<std::size_t>(a.threads, 1, a.repeat);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& r : runs)
    if (r.error) {
      log.error("seed " + std::to_string(r.seed) + ": " + r.error->what());
      return exit_code(r.error->code());
    }

  if (!a.details.empty()) {
    auto f = open_output(a.details);
    f << "seed,partition_accuracy,distance_rank_correlation\n";
    for (const auto& r : runs)
      f << r.seed << ',' << (r.score.partition_accuracy ? fmt(*r.score.partition_accuracy) : "") << ','
        << fmt(r.score.distance_rank_correlation) << '\n';
  }

  auto summarize = [&](const char* name, auto get) {
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& r : runs) {
      const double v = get(r);
      sum += v;
      lo = std::min(lo, v);
    }
    out << name << ": mean " << fmt(sum / static_cast<double>(runs.size())) << " min " << fmt(lo) << '\n';
  };
  out << "runs: " << runs.size() << '\n';
  out << "points: " << a.clusters * a.n << '\n';
  if (a.clusters == 2)
    summarize("partition_accuracy", [](const SynthRun& r) { return *r.score.partition_accuracy; });
  else
    out << "partition_accuracy: n/a\n";
  summarize("distance_rank_correlation", [](const SynthRun& r) { return r.score.distance_rank_correlation; });
  return kOk;
}

// Moves `--config FILE` out of the argument list and splices the file's
// key = value pairs in front of the remaining subcommand arguments, so flags
// given on the command line take precedence (options use TakeLast).
std::vector<std::string> expand_config(std::vector<std::string> args) {
  if (args.empty()) return args;
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + *path + "'");
  std::vector<std::string> injected;
  for (const auto& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--" || item.inputs.empty()) continue;
    if (!item.parents.empty() && item.parents.front() != args.front()) continue;
    std::string name = item.name;
    std::replace(name.begin(), name.end(), '_', '-');
    for (const auto& value : item.inputs) injected.push_back("--" + name + "=" + value);
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Log log(err);
  CLI::App app("Reconstruct 2-D trade maps of countries from bilateral trade volumes.", "trademap");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  PipelineArgs pipe;
  PlotArgs plot_args;
  std::string out_path;
  std::string svg_path;
  std::string dump_dir;
  std::string dump_spectrum;
  auto* embed_cmd = app.add_subcommand("embed", "Embed countries from a dyadic trade file");
  add_pipeline_options(embed_cmd, pipe);
  add_plot_options(embed_cmd, plot_args);
  embed_cmd->add_option("--out", out_path, "Coordinates CSV (default: stdout)");
  embed_cmd->add_option("--svg", svg_path, "Also render an SVG map");
  embed_cmd->add_option("--dump-matrices", dump_dir, "Directory for affinity/degree/Laplacian CSV grids");
  embed_cmd->add_option("--dump-spectrum", dump_spectrum, "CSV of the full Laplacian spectrum");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Validate geometry recovery on gravity-model data");
  synth_cmd->add_option("--seed", synth.seed, "First seed")->capture_default_str();
  synth_cmd->add_option("--clusters", synth.clusters, "Number of planted clusters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--n", synth.n, "Points per cluster")->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--spread", synth.spread, "Cluster radius")->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--separation-ratio", synth.separation_ratio, "Center separation / spread")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise, "Lognormal sigma")->check(CLI::NonNegativeNumber)->capture_default_str();
  synth_cmd->add_option("--repeat", synth.repeat, "Number of seeds")->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--mass-min", synth.mass_min, "Smallest economic mass")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--mass-max", synth.mass_max, "Largest economic mass")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--gravity", synth.gravity, "Gravity constant G")->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--threads", synth.threads, "Worker threads for --repeat")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth_cmd->add_option("--scenario-out", synth.scenario_out, "Write the first scenario as CSV");
  synth_cmd->add_option("--details", synth.details, "Per-seed CSV report");

  std::string query;
  std::size_t neighbor_count = 5;
  bool as_csv = false;
  auto* neighbors_cmd = app.add_subcommand("neighbors", "Nearest neighbors of a country in the map");
  add_pipeline_options(neighbors_cmd, pipe);
  neighbors_cmd->add_option("--coords", pipe.coords, "Saved coordinates CSV");
  neighbors_cmd->add_option("--of", query, "Country code")->required();
  neighbors_cmd->add_option("--k", neighbor_count, "Number of neighbors")->capture_default_str();
  neighbors_cmd->add_flag("--csv", as_csv, "CSV instead of a text table");
  neighbors_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  double zero_band = 0.0;
  auto* partition_cmd = app.add_subcommand("partition", "Split the map by the sign of the first coordinate");
  add_pipeline_options(partition_cmd, pipe);
  partition_cmd->add_option("--coords", pipe.coords, "Saved coordinates CSV");
  partition_cmd->add_option("--zero-band", zero_band, "Half-width of the boundary band")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  partition_cmd->add_flag("--csv", as_csv, "CSV instead of text");
  partition_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  auto* plot_cmd = app.add_subcommand("plot", "Render a labeled SVG scatter map");
  add_pipeline_options(plot_cmd, pipe);
  add_plot_options(plot_cmd, plot_args);
  plot_cmd->add_option("--coords", pipe.coords, "Saved coordinates CSV");
  plot_cmd->add_option("--out", out_path, "SVG file (default: stdout)");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kUsage;
  } catch (const Error& e) {
    log.error(e.what());
    return exit_code(e.code());
  }

  try {
    if (embed_cmd->parsed()) {
      const PipelineResult result = run_pipeline(pipe, log);
      emit(out_path, out, [&](std::ostream& o) { write_coordinates_csv(o, result.emb); });
      if (!svg_path.empty()) {
        auto f = open_output(svg_path);
        f << render_svg(result.emb, to_spec(plot_args));
      }
      if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        const std::filesystem::path dir(dump_dir);
        auto a = open_output((dir / "affinity.csv").string());
        write_matrix_csv(a, result.aff.roster, result.aff.values);
        auto l = open_output((dir / "laplacian.csv").string());
        write_matrix_csv(l, result.lap.roster, result.lap.values);
        auto d = open_output((dir / "degrees.csv").string());
        d << "code,degree\n";
        for (std::size_t i = 0; i < result.lap.degrees.degrees.size(); ++i)
          d << csv::escape(result.lap.roster.code(i)) << ',' << fmt(result.lap.degrees.degrees[i]) << '\n';
      }
      if (!dump_spectrum.empty()) {
        auto f = open_output(dump_spectrum);
        write_spectrum_csv(f, result.spectrum);
      }
      return kOk;
    }
    if (synth_cmd->parsed()) {
      if (synth.mass_max < synth.mass_min) {
        err << "--mass-max must be >= --mass-min\n\n" << synth_cmd->help();
        return kUsage;
      }
      return cmd_synth(synth, out, log);
    }
    if (neighbors_cmd->parsed()) {
      const Embedding emb = load_embedding(pipe, log);
      const auto neighbors = nearest_neighbors(emb, query, neighbor_count);
      emit(out_path, out, [&](std::ostream& o) {
        if (as_csv)
          write_neighbors_csv(o, neighbors);
        else
          write_neighbors_text(o, query, neighbors);
      });
      return kOk;
    }
    if (partition_cmd->parsed()) {
      const Embedding emb = load_embedding(pipe, log);
      const Bipartition part = bipartition(emb, zero_band);
      emit(out_path, out, [&](std::ostream& o) {
        if (as_csv)
          write_partition_csv(o, emb.roster, part);
        else
          write_partition_text(o, part);
      });
      return kOk;
    }
    if (plot_cmd->parsed()) {
      const Embedding emb = load_embedding(pipe, log);
      const std::string svg = render_svg(emb, to_spec(plot_args));
      emit(out_path, out, [&](std::ostream& o) { o << svg; });
      return kOk;
    }
  } catch (const Error& e) {
    log.error(std::string(to_string(e.code())) + ": " + e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    log.error(e.what());
    return kUsage;
  }
  return kUsage;
}

}  // namespace trademap::cli
