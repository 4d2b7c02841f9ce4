#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tristream/error.hpp"
#include "tristream/estimators.hpp"
#include "tristream/harness.hpp"
#include "tristream/oracle.hpp"

// CSV writers for every report the tools emit. Reals are written with 17
// significant digits so a reader recovers the exact double. Empty cells mean
// "unavailable". Column layouts are documented in docs/csv_schemas.md.
namespace tristream::csv {

inline std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string real(const std::optional<double>& x) { return x ? real(*x) : std::string(); }

template <typename T>
std::string integer(const std::optional<T>& x) {
  return x ? std::to_string(*x) : std::string();
}

inline constexpr std::string_view stats_header = "N,M,triangles,wedges,shared_pairs,clustering";

inline void write_stats_row(std::ostream& out, const GraphStats& s) {
  out << s.nodes << ',' << s.edges << ',' << s.triangles << ',' << s.wedges << ',' << s.shared_pairs << ','
      << real(s.clustering) << '\n';
}

inline constexpr std::string_view estimate_header =
    "run,seed,method,p,q,pool_capacity,estimate,triangles_observed,candidate_wedges,subgraph_edges,pool_size,"
    "sample_size,estimated_rse";

inline void write_estimate_row(std::ostream& out, std::uint64_t run, std::uint64_t seed, const EstimateResult& r) {
  out << run << ',' << seed << ',' << to_string(r.method) << ',' << real(r.p) << ',' << real(r.q) << ','
      << integer(r.pool_capacity) << ',' << real(r.estimate) << ',' << r.triangles_observed << ','
      << integer(r.candidate_wedges) << ',' << r.subgraph_edges << ',' << integer(r.pool_size) << ',' << r.sample_size
      << ',' << real(r.estimated_rse) << '\n';
}

inline void write_runs(std::ostream& out, const RunSummary& s) {
  out << estimate_header << '\n';
  for (std::uint64_t i = 0; i < s.runs.size(); ++i) {
    write_estimate_row(out, i, run_seed(s.config.base_seed, i), s.runs[i]);
  }
}

inline constexpr std::string_view summary_header =
    "method,p,pool,runs,base_seed,shuffle,truth,mean_estimate,observed_rse,predicted_rse,mean_triangles_observed,"
    "mean_sample_size";

inline void write_summary_row(std::ostream& out, const RunSummary& s) {
  const auto& c = s.config;
  out << to_string(c.method) << ',' << real(c.p) << ',' << (c.method == Method::pes ? std::to_string(c.pool) : "")
      << ',' << c.runs << ',' << c.base_seed << ',' << to_string(c.shuffle) << ',' << s.truth.triangles << ','
      << real(s.mean_estimate) << ',' << real(s.observed_rse) << ',' << real(s.predicted_rse) << ','
      << real(s.mean_triangles_observed) << ',' << real(s.mean_sample_size) << '\n';
}

/// Numeric fields of one summary row as read back from disk.
struct SummaryRecord {
  Method method = Method::pes;
  double p = 0.0;
  std::optional<std::uint64_t> pool;
  std::uint64_t runs = 0;
  std::uint64_t base_seed = 0;
  ShuffleMode shuffle = ShuffleMode::per_run;
  std::uint64_t truth = 0;
  double mean_estimate = 0.0;
  double observed_rse = 0.0;
  std::optional<double> predicted_rse;
  double mean_triangles_observed = 0.0;
  double mean_sample_size = 0.0;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  for (;;) {
    const auto comma = line.find(',');
    cells.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return cells;
}

template <typename T>
T number(std::string_view cell, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw ParseError(line, "bad numeric cell '" + std::string(cell) + "'");
  }
  return value;
}

template <typename T>
std::optional<T> maybe_number(std::string_view cell, std::size_t line) {
  if (cell.empty()) return std::nullopt;
  return number<T>(cell, line);
}

}  // namespace detail

inline std::vector<SummaryRecord> read_summaries(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != summary_header) throw ParseError(1, "missing summary CSV header");
  std::vector<SummaryRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = detail::split(line);
    if (cells.size() != 12) throw ParseError(line_no, "expected 12 cells");
    SummaryRecord r;
    const auto method = parse_method(cells[0]);
    const auto shuffle = parse_shuffle_mode(cells[5]);
    if (!method || !shuffle) throw ParseError(line_no, "bad method or shuffle cell");
    r.method = *method;
    r.p = detail::number<double>(cells[1], line_no);
    r.pool = detail::maybe_number<std::uint64_t>(cells[2], line_no);
    r.runs = detail::number<std::uint64_t>(cells[3], line_no);
    r.base_seed = detail::number<std::uint64_t>(cells[4], line_no);
    r.shuffle = *shuffle;
    r.truth = detail::number<std::uint64_t>(cells[6], line_no);
    r.mean_estimate = detail::number<double>(cells[7], line_no);
    r.observed_rse = detail::number<double>(cells[8], line_no);
    r.predicted_rse = detail::maybe_number<double>(cells[9], line_no);
    r.mean_triangles_observed = detail::number<double>(cells[10], line_no);
    r.mean_sample_size = detail::number<double>(cells[11], line_no);
    records.push_back(r);
  }
  return records;
}

inline constexpr std::string_view sweep_header =
    "target_rse,observed_rse,predicted_rse,mean_triangles_observed,mean_sample_size,method,p,pool,clamped";

inline void write_sweep(std::ostream& out, const SweepReport& report) {
  out << sweep_header << '\n';
  for (const auto& row : report.rows) {
    const auto& s = row.summary;
    out << real(row.target_rse) << ',' << real(s.observed_rse) << ',' << real(s.predicted_rse) << ','
        << real(s.mean_triangles_observed) << ',' << real(s.mean_sample_size) << ',' << to_string(report.method) << ','
        << real(row.p) << ',' << integer(row.pool) << ',' << (row.clamped ? 1 : 0) << '\n';
  }
}

inline constexpr std::string_view ratio_header =
    "graph,N,M,triangles,wedges,clustering,n_times_clustering,target_rse,p_nes,p_pes,pool,observed_rse_nes,"
    "observed_rse_pes,p_nes_observed,p_pes_observed,observed_p_ratio,predicted_p_ratio,nes_mean_sample_size,"
    "pes_mean_sample_size,observed_sample_ratio,saturated";

inline void write_ratio_row(std::ostream& out, const RatioReport& r) {
  const auto& s = r.stats;
  out << r.graph << ',' << s.nodes << ',' << s.edges << ',' << s.triangles << ',' << s.wedges << ','
      << real(s.clustering) << ',' << real(static_cast<double>(s.nodes) * s.clustering) << ',' << real(r.target_rse)
      << ',' << real(r.p_nes) << ',' << real(r.pes.p) << ',' << r.pes.n << ',' << real(r.nes_summary.observed_rse)
      << ',' << real(r.pes_summary.observed_rse) << ',' << real(r.p_nes_observed) << ',' << real(r.p_pes_observed)
      << ',' << real(r.observed_p_ratio) << ',' << real(r.predicted_p_ratio) << ','
      << real(r.nes_summary.mean_sample_size) << ',' << real(r.pes_summary.mean_sample_size) << ','
      << real(r.observed_sample_ratio) << ',' << (r.saturated ? 1 : 0) << '\n';
}

inline constexpr std::string_view calibration_header =
    "target_rse,nes_p,nes_clamped,pes_p,pes_pool,pes_p_clamped,pes_pool_capped,pes_expected_triangles_observed,"
    "pool_rule_n,variance_term_unit,variance_term_shared,variance_term_indep,variance_total,predicted_rse_full";

}  // namespace tristream::csv
