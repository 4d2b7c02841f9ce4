#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "tristream/error.hpp"
#include "tristream/oracle.hpp"

namespace tristream {

struct PesParams {
  double p = 1.0;
  std::uint64_t n = 1;
};

/// Analytic PES variance split into its three contributions:
/// single triangles, pairs sharing an edge, and independent pairs.
struct VarianceBreakdown {
  double term_unit = 0.0;
  double term_shared = 0.0;
  double term_indep = 0.0;
  double total = 0.0;
  double q = 0.0;           // n / (p * wedges)
  double q_prime_sq = 0.0;  // (n^2 - n) / (p^2 wedges^2 - p wedges)
  double phi_prime = 0.0;   // triangles^2 - 2 shared_pairs - triangles
};

namespace detail {

inline void check_pes_params(const PesParams& params) {
  if (!(params.p > 0.0 && params.p <= 1.0)) throw ParameterError("p must be in (0, 1], got " + format_real(params.p));
  if (params.n < 1) throw ParameterError("pool size n must be at least 1");
}

// Returns p * wedges after checking that the pool theory applies.
inline double expected_candidates(const GraphStats& stats, const PesParams& params) {
  check_pes_params(params);
  const double p_lambda = params.p * static_cast<double>(stats.wedges);
  if (!(p_lambda > 1.0)) throw DomainError("pool theory undefined for sub-unit expected candidates (p * wedges <= 1)");
  if (static_cast<double>(params.n) > p_lambda) {
    throw DomainError("pool larger than the expected candidate count (q > 1); variance theory assumes a saturated pool");
  }
  return p_lambda;
}

}  // namespace detail

inline VarianceBreakdown pes_variance(const GraphStats& stats, const PesParams& params) {
  const double p_lambda = detail::expected_candidates(stats, params);
  const double p = params.p;
  const double n = static_cast<double>(params.n);
  const double tri = static_cast<double>(stats.triangles);
  const double phi = static_cast<double>(stats.shared_pairs);

  VarianceBreakdown v;
  v.q = n / p_lambda;
  v.q_prime_sq = (n * n - n) / (p_lambda * p_lambda - p_lambda);
  v.phi_prime = tri * tri - 2.0 * phi - tri;
  const double pq = p * v.q;
  const double q_sq = v.q * v.q;
  v.term_unit = tri * (1.0 - pq) / pq;
  v.term_shared = 2.0 * phi * (v.q_prime_sq - p * q_sq) / (5.0 * p * q_sq);
  v.term_indep = v.phi_prime * (v.q_prime_sq - q_sq) / q_sq;
  v.total = v.term_unit + v.term_shared + v.term_indep;
  return v;
}

// Large-graph RSE approximation before the -pq and shared-pair terms are
// dropped: sqrt((1 - pq + 2 Phi / (5 Delta) (q - pq)) / (Delta p q)).
inline double pes_rse_full(const GraphStats& stats, const PesParams& params) {
  const double p_lambda = detail::expected_candidates(stats, params);
  if (stats.triangles == 0) throw DomainError("RSE undefined for a triangle-free graph");
  const double tri = static_cast<double>(stats.triangles);
  const double q = static_cast<double>(params.n) / p_lambda;
  const double pq = params.p * q;
  const double inner = 1.0 - pq + 2.0 * static_cast<double>(stats.shared_pairs) / (5.0 * tri) * (q - pq);
  return std::sqrt(inner / (tri * pq));
}

inline std::optional<double> pes_rse_simple(std::uint64_t triangles_observed) {
  if (triangles_observed == 0) return std::nullopt;
  return 1.0 / std::sqrt(static_cast<double>(triangles_observed));
}

inline std::optional<double> nes_rse_simple(std::uint64_t triangles_observed) {
  return pes_rse_simple(triangles_observed);
}

// Real-valued form used with run averages of the observed triangle count.
inline std::optional<double> rse_from_observed(double mean_triangles_observed) {
  if (!(mean_triangles_observed > 0.0)) return std::nullopt;
  return 1.0 / std::sqrt(mean_triangles_observed);
}

/// (1/truth) * sqrt((1/k) sum (x_i - mean)^2), population normalization.
inline double observed_rse(std::span<const double> estimates, double truth) {
  if (estimates.size() < 2) throw DomainError("insufficient runs: observed RSE needs at least 2 estimates");
  if (!(truth > 0.0)) throw DomainError("observed RSE needs a positive true triangle count");
  const double k = static_cast<double>(estimates.size());
  double mean = 0.0;
  for (double x : estimates) mean += x;
  mean /= k;
  double ss = 0.0;
  for (double x : estimates) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / k) / truth;
}

struct NesCalibration {
  double p = 1.0;
  bool clamped = false;  // the unclamped p exceeded 1
};

/// p such that the expected number of observed triangles p^2 * truth equals
/// target_rse^-2, clamped to 1.
inline NesCalibration calibrate_nes(double target_rse, std::uint64_t truth_triangles) {
  if (!(target_rse > 0.0)) throw ParameterError("target RSE must be positive");
  if (truth_triangles == 0) throw DomainError("cannot calibrate on a triangle-free graph");
  const double p = 1.0 / (target_rse * std::sqrt(static_cast<double>(truth_triangles)));
  if (p > 1.0) return {1.0, true};
  return {p, false};
}

namespace detail {

// ceil that ignores round-off just above an integer (25 / 0.05 and friends).
inline std::uint64_t ceil_tolerant(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace detail

/// Pool size needed to hold target_rse^-2 closed wedges when a fraction
/// `clustering` of pooled wedges close: ceil(target_rse^-2 / clustering).
inline std::uint64_t calibrate_pes_pool(double target_rse, double clustering) {
  if (!(target_rse > 0.0)) throw ParameterError("target RSE must be positive");
  if (clustering == 0.0) throw DomainError("pool size unbounded for triangle-free graphs (clustering = 0)");
  if (!(clustering > 0.0 && clustering <= 1.0)) throw ParameterError("clustering must be in (0, 1]");
  return detail::ceil_tolerant(1.0 / (target_rse * target_rse) / clustering);
}

struct PesCalibration {
  double p = 1.0;
  std::uint64_t n = 1;
  bool p_clamped = false;  // the unclamped p exceeded 1
  bool n_capped = false;   // n was capped at the wedge count
  double expected_triangles_observed = 0.0;
};

/// Chooses (p, n) with pool size equal to the expected subgraph size
/// (n = p M) so that the expected observed count p q Delta, with
/// q = n / (p Lambda), reaches target_rse^-2. That gives
/// p = Lambda / (target_rse^2 M Delta). When p clamps at 1 the pool is
/// enlarged instead; n never exceeds Lambda.
inline PesCalibration calibrate_pes(double target_rse, const GraphStats& stats) {
  if (!(target_rse > 0.0)) throw ParameterError("target RSE must be positive");
  if (stats.triangles == 0) throw DomainError("cannot calibrate on a triangle-free graph");
  const double needed = 1.0 / (target_rse * target_rse);
  const double tri = static_cast<double>(stats.triangles);
  const double lambda = static_cast<double>(stats.wedges);
  const double m = static_cast<double>(stats.edges);

  PesCalibration c;
  c.p = lambda * needed / (m * tri);
  double pool = c.p * m;
  if (c.p > 1.0) {
    c.p = 1.0;
    c.p_clamped = true;
    pool = needed * lambda / tri;
  }
  c.n = std::max<std::uint64_t>(1, detail::ceil_tolerant(pool));
  if (c.n > stats.wedges) {
    c.n = std::max<std::uint64_t>(1, stats.wedges);
    c.n_capped = true;
  }
  const double q = std::min(1.0, static_cast<double>(c.n) / (c.p * lambda));
  c.expected_triangles_observed = c.p * q * tri;
  return c;
}

/// Predicted p_NES / p_PES at equal accuracy when the pool is as large as the
/// PES subgraph: M / (p_NES * wedges).
inline double nes_pes_ratio(std::uint64_t edges, std::uint64_t wedges, double p_nes) {
  if (edges < 1 || wedges < 1) throw ParameterError("ratio needs at least one edge and one wedge");
  if (!(p_nes > 0.0 && p_nes <= 1.0)) throw ParameterError("p_nes must be in (0, 1]");
  return static_cast<double>(edges) / (p_nes * static_cast<double>(wedges));
}

}  // namespace tristream
