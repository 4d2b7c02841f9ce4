#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tristream/analysis.hpp"
#include "tristream/error.hpp"
#include "tristream/estimators.hpp"
#include "tristream/graph.hpp"
#include "tristream/io.hpp"
#include "tristream/oracle.hpp"
#include "tristream/random.hpp"

namespace tristream {

// per_run: each run shuffles the stream with its own seed.
// fixed:   one shuffle with the base seed, shared by every run.
// none:    file order.
enum class ShuffleMode { per_run, fixed, none };

inline std::string_view to_string(ShuffleMode m) {
  switch (m) {
    case ShuffleMode::per_run: return "per-run";
    case ShuffleMode::fixed: return "fixed";
    case ShuffleMode::none: return "none";
  }
  return "?";
}

inline std::optional<ShuffleMode> parse_shuffle_mode(std::string_view s) {
  if (s == "per-run") return ShuffleMode::per_run;
  if (s == "fixed") return ShuffleMode::fixed;
  if (s == "none") return ShuffleMode::none;
  return std::nullopt;
}

struct ExperimentConfig {
  Method method = Method::pes;
  double p = 1.0;
  std::uint64_t pool = 1;  // ignored for NES
  std::uint64_t runs = 1000;
  std::uint64_t base_seed = 1;
  ShuffleMode shuffle = ShuffleMode::per_run;
  unsigned jobs = 1;
};

struct RunSummary {
  ExperimentConfig config;
  GraphStats truth;
  std::vector<EstimateResult> runs;  // ordered by run index
  double mean_estimate = 0.0;
  double observed_rse = 0.0;
  double mean_triangles_observed = 0.0;
  double mean_sample_size = 0.0;
  std::optional<double> predicted_rse;  // observed-count^-1/2 at the mean count
};

// Limits on what the exact oracle is asked to handle.
struct OracleBudget {
  std::size_t max_edges = 20'000'000;
};

inline std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run) { return base_seed + run; }

/// Runs one estimator pass with the seed schedule used by the harness.
inline EstimateResult single_run(const EdgeList& graph, const EdgeList* fixed_stream, const ExperimentConfig& config,
                                 std::uint64_t run) {
  SeededRandom rng(run_seed(config.base_seed, run));
  const auto go = [&](const EdgeList& stream) {
    return config.method == Method::nes ? nes_run(stream, config.p, rng)
                                        : pes_run(stream, config.p, config.pool, rng);
  };
  if (config.shuffle == ShuffleMode::per_run) return go(shuffle_stream(graph, rng));
  return go(fixed_stream ? *fixed_stream : graph);
}

namespace detail {

// Executes body(i) for i in [0, count) on at most `jobs` threads. The first
// failure by index is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned jobs, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::uint64_t> next{0};
  const auto worker = [&] {
    for (std::uint64_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, jobs), count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

/// k independent runs of one estimator configuration against known truth.
inline RunSummary run_experiment(const EdgeList& graph, const GraphStats& truth, const ExperimentConfig& config) {
  if (config.runs < 2) throw DomainError("insufficient runs: observed RSE needs at least 2 runs, got " + std::to_string(config.runs));
  if (truth.triangles == 0) throw InfeasibleError("graph has no triangles (Δ = 0); relative error is undefined");

  std::optional<EdgeList> fixed_stream;
  if (config.shuffle == ShuffleMode::fixed) fixed_stream = shuffle_stream(graph, StreamSeed{config.base_seed});

  RunSummary summary;
  summary.config = config;
  summary.truth = truth;
  summary.runs.resize(config.runs);
  detail::parallel_for(config.runs, config.jobs, [&](std::uint64_t i) {
    try {
      summary.runs[i] = single_run(graph, fixed_stream ? &*fixed_stream : nullptr, config, i);
    } catch (const ParameterError& e) {
      throw ParameterError("run " + std::to_string(i) + ": " + e.what());
    }
  });

  std::vector<double> estimates;
  estimates.reserve(summary.runs.size());
  double observed = 0.0;
  double sample = 0.0;
  for (const auto& r : summary.runs) {
    estimates.push_back(r.estimate);
    summary.mean_estimate += r.estimate;
    observed += static_cast<double>(r.triangles_observed);
    sample += static_cast<double>(r.sample_size);
  }
  const double k = static_cast<double>(config.runs);
  summary.mean_estimate /= k;
  summary.mean_triangles_observed = observed / k;
  summary.mean_sample_size = sample / k;
  summary.observed_rse = observed_rse(estimates, static_cast<double>(truth.triangles));
  summary.predicted_rse = rse_from_observed(summary.mean_triangles_observed);
  return summary;
}

/// Loads a graph and its oracle statistics, refusing graphs over budget.
struct LoadedGraph {
  EdgeList edges;
  GraphStats stats;
};

inline LoadedGraph load_graph(const std::filesystem::path& input, const OracleBudget& budget = {}) {
  LoadedGraph g;
  g.edges = read_edge_list(input);
  if (g.edges.edge_count() > budget.max_edges) {
    throw InfeasibleError("graph has " + std::to_string(g.edges.edge_count()) + " edges, over the oracle budget of " +
                          std::to_string(budget.max_edges));
  }
  g.stats = stats(g.edges);
  return g;
}

inline RunSummary run_experiment(const std::filesystem::path& input, const ExperimentConfig& config,
                                 const OracleBudget& budget = {}) {
  const LoadedGraph g = load_graph(input, budget);
  return run_experiment(g.edges, g.stats, config);
}

/// NES vs PES at equal target accuracy.
///
/// Both methods are first calibrated analytically (NES: p_N^2 Delta =
/// target^-2; PES: pool equal to the expected subgraph, p_D q Delta =
/// target^-2). After the runs, each probability is rescaled to the value at
/// which its observed RSE would hit the target, using the scaling of the
/// estimators' error with p (NES: rse ~ 1/p; PES with n = p M: rse ~ p^-1/2).
/// The observed ratio is formed from the rescaled probabilities and compared
/// with the analytic prediction M / (p_N Lambda) at the calibrated p_N.
struct RatioReport {
  std::string graph;
  GraphStats stats;
  double target_rse = 0.0;
  double p_nes = 0.0;
  PesCalibration pes;
  RunSummary nes_summary;
  RunSummary pes_summary;
  double p_nes_observed = 0.0;
  double p_pes_observed = 0.0;
  double observed_p_ratio = 0.0;
  double predicted_p_ratio = 0.0;
  double observed_sample_ratio = 0.0;  // NES mean sample size / PES mean sample size
  bool saturated = false;              // some probability hit 1; ratio not meaningful
};

inline RatioReport ratio_experiment(const EdgeList& graph, const GraphStats& truth, double target_rse, std::uint64_t runs,
                                    std::uint64_t base_seed, unsigned jobs = 1, std::string name = {}) {
  if (truth.triangles == 0) throw InfeasibleError("graph has no triangles (Δ = 0); ratio experiment refused");
  RatioReport r;
  r.graph = std::move(name);
  r.stats = truth;
  r.target_rse = target_rse;
  const NesCalibration nes = calibrate_nes(target_rse, truth.triangles);
  r.p_nes = nes.p;
  r.pes = calibrate_pes(target_rse, truth);

  ExperimentConfig config;
  config.runs = runs;
  config.base_seed = base_seed;
  config.jobs = jobs;
  config.method = Method::nes;
  config.p = r.p_nes;
  r.nes_summary = run_experiment(graph, truth, config);
  config.method = Method::pes;
  config.p = r.pes.p;
  config.pool = r.pes.n;
  r.pes_summary = run_experiment(graph, truth, config);

  r.p_nes_observed = r.p_nes * r.nes_summary.observed_rse / target_rse;
  const double pes_scale = r.pes_summary.observed_rse / target_rse;
  r.p_pes_observed = r.pes.p * pes_scale * pes_scale;
  r.observed_p_ratio = r.p_nes_observed / r.p_pes_observed;
  r.saturated = nes.clamped || r.pes.p_clamped || r.pes.n_capped || r.p_nes_observed > 1.0 || r.p_pes_observed > 1.0;
  r.predicted_p_ratio = nes_pes_ratio(truth.edges, truth.wedges, r.p_nes);
  r.observed_sample_ratio = r.nes_summary.mean_sample_size / r.pes_summary.mean_sample_size;
  return r;
}

struct SweepRow {
  double target_rse = 0.0;
  double p = 0.0;
  std::optional<std::uint64_t> pool;
  bool clamped = false;
  RunSummary summary;
};

struct SweepReport {
  Method method = Method::pes;
  std::vector<SweepRow> rows;
};

/// One calibrated experiment per target RSE.
inline SweepReport rse_sweep(const EdgeList& graph, const GraphStats& truth, const std::vector<double>& targets, Method method,
                             std::uint64_t runs, std::uint64_t base_seed, unsigned jobs = 1,
                             ShuffleMode shuffle = ShuffleMode::per_run) {
  SweepReport report;
  report.method = method;
  if (targets.empty()) return report;
  if (truth.triangles == 0) throw InfeasibleError("graph has no triangles (Δ = 0); sweep refused");
  for (double target : targets) {
    SweepRow row;
    row.target_rse = target;
    ExperimentConfig config;
    config.method = method;
    config.runs = runs;
    config.base_seed = base_seed;
    config.jobs = jobs;
    config.shuffle = shuffle;
    if (method == Method::nes) {
      const NesCalibration c = calibrate_nes(target, truth.triangles);
      config.p = c.p;
      row.clamped = c.clamped;
    } else {
      const PesCalibration c = calibrate_pes(target, truth);
      config.p = c.p;
      config.pool = c.n;
      row.pool = c.n;
      row.clamped = c.p_clamped || c.n_capped;
    }
    row.p = config.p;
    row.summary = run_experiment(graph, truth, config);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace tristream
