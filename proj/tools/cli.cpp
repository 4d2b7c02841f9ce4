#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "tristream/tristream.hpp"

namespace tristream::cli {
namespace {

struct Options {
  std::string input;
  std::uint64_t seed = 1;
  std::uint64_t runs = 1000;
  unsigned jobs = 1;
  std::string csv;
  std::string runs_csv;
  std::string shuffle = "per-run";
  std::string method = "pes";
  double p = 0.0;
  std::optional<std::uint64_t> pool;
  double target_rse = 0.2;
  std::vector<double> targets{0.1, 0.2, 0.3, 0.4};
  std::size_t max_edges = OracleBudget{}.max_edges;
};

void add_input(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "Edge-list file (plain text or gzip)")->required();
}

void add_experiment_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Base seed; run i uses seed + i")->capture_default_str();
  cmd->add_option("--runs", o.runs, "Independent runs per configuration")->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "Maximum concurrent runs")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--csv", o.csv, "Write the CSV report to this path");
  cmd->add_option("--max-edges", o.max_edges, "Refuse graphs with more edges than this")->capture_default_str();
}

void add_shuffle(CLI::App* cmd, Options& o, std::vector<std::string> modes) {
  cmd->add_option("--shuffle", o.shuffle, "Stream order")->capture_default_str()->check(CLI::IsMember(std::move(modes)));
}

void add_method(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method, "Estimator")->capture_default_str()->check(CLI::IsMember({"nes", "pes"}));
}

void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  body(file);
}

void print_stats(std::ostream& out, const GraphStats& s) {
  out << "N=" << s.nodes << " M=" << s.edges << " triangles=" << s.triangles << " wedges=" << s.wedges
      << " shared_pairs=" << s.shared_pairs << " clustering=" << format_real(s.clustering) << '\n';
}

template <typename T>
std::string or_na(const std::optional<T>& x) {
  if (!x) return "unavailable";
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(*x);
  } else {
    return std::to_string(*x);
  }
}

void print_estimate(std::ostream& out, const EstimateResult& r) {
  out << "method=" << to_string(r.method) << '\n'
      << "estimate=" << format_real(r.estimate) << '\n'
      << "p=" << format_real(r.p) << '\n';
  if (r.method == Method::pes) {
    out << "q=" << or_na(r.q) << '\n'
        << "pool_capacity=" << or_na(r.pool_capacity) << '\n'
        << "candidate_wedges=" << or_na(r.candidate_wedges) << '\n'
        << "pool_size=" << or_na(r.pool_size) << '\n';
  }
  out << "triangles_observed=" << r.triangles_observed << '\n'
      << "subgraph_edges=" << r.subgraph_edges << '\n'
      << "sample_size=" << r.sample_size << '\n'
      << "estimated_rse=" << or_na(r.estimated_rse) << '\n';
}

void print_summary(std::ostream& out, const RunSummary& s) {
  out << "method=" << to_string(s.config.method) << " p=" << format_real(s.config.p);
  if (s.config.method == Method::pes) out << " pool=" << s.config.pool;
  out << " runs=" << s.config.runs << '\n'
      << "truth=" << s.truth.triangles << '\n'
      << "mean_estimate=" << format_real(s.mean_estimate) << '\n'
      << "observed_rse=" << format_real(s.observed_rse) << '\n'
      << "predicted_rse=" << or_na(s.predicted_rse) << '\n'
      << "mean_triangles_observed=" << format_real(s.mean_triangles_observed) << '\n'
      << "mean_sample_size=" << format_real(s.mean_sample_size) << '\n';
}

int cmd_stats(const Options& o, std::ostream& out) {
  const GraphStats s = stats(read_edge_list(o.input));
  print_stats(out, s);
  out << csv::stats_header << '\n';
  csv::write_stats_row(out, s);
  if (!o.csv.empty()) {
    write_csv_file(o.csv, [&](std::ostream& f) {
      f << csv::stats_header << '\n';
      csv::write_stats_row(f, s);
    });
  }
  return kSuccess;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const Method method = *parse_method(o.method);
  if (method == Method::pes && !o.pool) throw ParameterError("--pool is required for --method pes");
  detail::check_probability(o.p);
  if (method == Method::pes && *o.pool < 1) throw ParameterError("pool size n must be at least 1, got 0");
  const EdgeList graph = read_edge_list(o.input);
  SeededRandom rng(o.seed);
  const EdgeList stream = o.shuffle == "per-run" ? shuffle_stream(graph, rng) : graph;
  const EstimateResult r = method == Method::nes ? nes_run(stream, o.p, rng) : pes_run(stream, o.p, *o.pool, rng);
  print_estimate(out, r);
  if (!o.csv.empty()) {
    write_csv_file(o.csv, [&](std::ostream& f) {
      f << csv::estimate_header << '\n';
      csv::write_estimate_row(f, 0, o.seed, r);
    });
  }
  return kSuccess;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  ExperimentConfig config;
  config.method = *parse_method(o.method);
  if (config.method == Method::pes && !o.pool) throw ParameterError("--pool is required for --method pes");
  config.p = o.p;
  config.pool = o.pool.value_or(1);
  config.runs = o.runs;
  config.base_seed = o.seed;
  config.jobs = o.jobs;
  config.shuffle = *parse_shuffle_mode(o.shuffle);
  detail::check_probability(config.p);
  const RunSummary s = run_experiment(o.input, config, OracleBudget{o.max_edges});
  print_summary(out, s);
  if (!o.csv.empty()) {
    write_csv_file(o.csv, [&](std::ostream& f) {
      f << csv::summary_header << '\n';
      csv::write_summary_row(f, s);
    });
  }
  if (!o.runs_csv.empty()) write_csv_file(o.runs_csv, [&](std::ostream& f) { csv::write_runs(f, s); });
  return kSuccess;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const LoadedGraph g = load_graph(o.input, OracleBudget{o.max_edges});
  const RatioReport r = ratio_experiment(g.edges, g.stats, o.target_rse, o.runs, o.seed, o.jobs, o.input);
  out << "target_rse=" << format_real(r.target_rse) << '\n'
      << "p_nes=" << format_real(r.p_nes) << " p_pes=" << format_real(r.pes.p) << " pool=" << r.pes.n << '\n'
      << "observed_rse_nes=" << format_real(r.nes_summary.observed_rse)
      << " observed_rse_pes=" << format_real(r.pes_summary.observed_rse) << '\n'
      << "observed_p_ratio=" << format_real(r.observed_p_ratio) << '\n'
      << "predicted_p_ratio=" << format_real(r.predicted_p_ratio) << '\n'
      << "observed_sample_ratio=" << format_real(r.observed_sample_ratio) << '\n'
      << "saturated=" << (r.saturated ? "yes" : "no") << '\n';
  if (!o.csv.empty()) {
    write_csv_file(o.csv, [&](std::ostream& f) {
      f << csv::ratio_header << '\n';
      csv::write_ratio_row(f, r);
    });
  }
  return kSuccess;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const LoadedGraph g = load_graph(o.input, OracleBudget{o.max_edges});
  const SweepReport report =
      rse_sweep(g.edges, g.stats, o.targets, *parse_method(o.method), o.runs, o.seed, o.jobs, *parse_shuffle_mode(o.shuffle));
  csv::write_sweep(out, report);
  if (!o.csv.empty()) write_csv_file(o.csv, [&](std::ostream& f) { csv::write_sweep(f, report); });
  return kSuccess;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  const LoadedGraph g = load_graph(o.input, OracleBudget{o.max_edges});
  const GraphStats& s = g.stats;
  if (s.triangles == 0) throw InfeasibleError("graph has no triangles (Δ = 0); nothing to calibrate");
  const NesCalibration nes = calibrate_nes(o.target_rse, s.triangles);
  const PesCalibration pes = calibrate_pes(o.target_rse, s);
  const std::uint64_t pool_rule = calibrate_pes_pool(o.target_rse, s.clustering);

  std::optional<VarianceBreakdown> var;
  std::optional<double> rse_full;
  try {
    var = pes_variance(s, {pes.p, pes.n});
    rse_full = pes_rse_full(s, {pes.p, pes.n});
  } catch (const DomainError&) {
    // saturated pool: variance theory does not apply, cells stay empty
  }

  std::ostringstream row;
  row << csv::real(o.target_rse) << ',' << csv::real(nes.p) << ',' << (nes.clamped ? 1 : 0) << ',' << csv::real(pes.p)
      << ',' << pes.n << ',' << (pes.p_clamped ? 1 : 0) << ',' << (pes.n_capped ? 1 : 0) << ','
      << csv::real(pes.expected_triangles_observed) << ',' << pool_rule << ','
      << (var ? csv::real(var->term_unit) : "") << ',' << (var ? csv::real(var->term_shared) : "") << ','
      << (var ? csv::real(var->term_indep) : "") << ',' << (var ? csv::real(var->total) : "") << ','
      << csv::real(rse_full) << '\n';
  print_stats(out, s);
  out << csv::calibration_header << '\n' << row.str();
  if (!o.csv.empty()) {
    write_csv_file(o.csv, [&](std::ostream& f) { f << csv::calibration_header << '\n' << row.str(); });
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streaming triangle-count estimation (NES / PES) with exact oracles and experiment harness", "tristream"};
  app.require_subcommand(1);
  Options o;

  auto* stats_cmd = app.add_subcommand("stats", "Exact N, M, triangles, wedges, shared pairs and clustering");
  add_input(stats_cmd, o);
  stats_cmd->add_option("--csv", o.csv, "Also write the CSV row to this path");

  auto* estimate_cmd = app.add_subcommand("estimate", "One streaming pass of NES or PES");
  add_input(estimate_cmd, o);
  add_method(estimate_cmd, o);
  estimate_cmd->add_option("--p", o.p, "Edge sampling probability in (0, 1]")->required();
  estimate_cmd->add_option("--pool", o.pool, "Wedge pool size (PES)");
  estimate_cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  estimate_cmd->add_option("--csv", o.csv, "Write the result as a CSV row to this path");
  add_shuffle(estimate_cmd, o, {"per-run", "none"});

  auto* evaluate_cmd = app.add_subcommand("evaluate", "k independent runs: observed vs predicted RSE");
  add_input(evaluate_cmd, o);
  add_method(evaluate_cmd, o);
  evaluate_cmd->add_option("--p", o.p, "Edge sampling probability in (0, 1]")->required();
  evaluate_cmd->add_option("--pool", o.pool, "Wedge pool size (PES)");
  evaluate_cmd->add_option("--runs-csv", o.runs_csv, "Write one CSV row per run to this path");
  add_experiment_flags(evaluate_cmd, o);
  add_shuffle(evaluate_cmd, o, {"per-run", "fixed", "none"});

  auto* compare_cmd = app.add_subcommand("compare", "NES vs PES sampling-probability ratio at a target RSE");
  add_input(compare_cmd, o);
  compare_cmd->add_option("--target-rse", o.target_rse, "Target relative standard error")->capture_default_str();
  add_experiment_flags(compare_cmd, o);

  auto* sweep_cmd = app.add_subcommand("sweep", "Calibrated runs over a list of target RSEs");
  add_input(sweep_cmd, o);
  add_method(sweep_cmd, o);
  sweep_cmd->add_option("--targets", o.targets, "Target RSE values")->delimiter(',')->capture_default_str();
  add_experiment_flags(sweep_cmd, o);
  add_shuffle(sweep_cmd, o, {"per-run", "fixed", "none"});

  auto* calibrate_cmd = app.add_subcommand("calibrate", "Recommended parameters and predicted PES variance");
  add_input(calibrate_cmd, o);
  calibrate_cmd->add_option("--target-rse", o.target_rse, "Target relative standard error")->capture_default_str();
  calibrate_cmd->add_option("--csv", o.csv, "Also write the CSV row to this path");
  calibrate_cmd->add_option("--max-edges", o.max_edges, "Refuse graphs with more edges than this")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  static const std::map<std::string, int (*)(const Options&, std::ostream&)> handlers{
      {"stats", cmd_stats},     {"estimate", cmd_estimate}, {"evaluate", cmd_evaluate},
      {"compare", cmd_compare}, {"sweep", cmd_sweep},       {"calibrate", cmd_calibrate},
  };
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(name)(o, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const tristream::ParseError& e) {
    err << "error: " << o.input << ": " << e.what() << '\n';
    return kData;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  }
}

}  // namespace tristream::cli
