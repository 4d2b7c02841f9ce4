#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tristream/error.hpp"
#include "tristream/graph.hpp"
#include "tristream/random.hpp"
#include "tristream/subgraph.hpp"
#include "tristream/wedge_pool.hpp"

namespace tristream {

enum class Method { nes, pes };

inline std::string_view to_string(Method m) { return m == Method::nes ? "nes" : "pes"; }

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "nes") return Method::nes;
  if (s == "pes") return Method::pes;
  return std::nullopt;
}

/// Outputs of one estimator pass. PES-only fields are empty for NES.
struct EstimateResult {
  Method method = Method::nes;
  double estimate = 0.0;
  double p = 0.0;
  std::optional<double> q;
  std::optional<std::uint64_t> pool_capacity;
  std::uint64_t triangles_observed = 0;  // closed wedges seen via g (NES) or the pool (PES)
  std::optional<std::uint64_t> candidate_wedges;
  std::uint64_t subgraph_edges = 0;
  std::optional<std::uint64_t> pool_size;  // final occupancy
  std::uint64_t sample_size = 0;           // |g| for NES, |g| + |pool| for PES
  std::optional<double> estimated_rse;     // triangles_observed^(-1/2)

  friend bool operator==(const EstimateResult&, const EstimateResult&) = default;
};

namespace detail {

inline void check_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("sampling probability p must be in (0, 1], got " + format_real(p));
}

inline std::optional<double> inverse_sqrt_or_empty(std::uint64_t count) {
  if (count == 0) return std::nullopt;
  return 1.0 / std::sqrt(static_cast<double>(count));
}

}  // namespace detail

/// Naive edge sampling: keep each edge with probability p and count every
/// sampled wedge that a later stream edge closes. Each such closure is one
/// observed triangle, seen with probability p^2.
class NesEstimator {
 public:
  explicit NesEstimator(double p) : p_(p) { detail::check_probability(p); }

  template <RandomSource R>
  void process(const Edge& e, R& rng) {
    if (rng.bernoulli(p_)) subgraph_.insert(e);
    subgraph_.for_each_common_neighbor(e.u, e.v, [&](NodeId) { ++closed_; });
  }

  const SampledSubgraph& subgraph() const { return subgraph_; }
  std::uint64_t triangles_observed() const { return closed_; }

  EstimateResult result() const {
    EstimateResult r;
    r.method = Method::nes;
    r.p = p_;
    r.triangles_observed = closed_;
    r.estimate = static_cast<double>(closed_) / (p_ * p_);
    r.subgraph_edges = subgraph_.edge_count();
    r.sample_size = r.subgraph_edges;
    r.estimated_rse = detail::inverse_sqrt_or_empty(closed_);
    return r;
  }

 private:
  double p_;
  SampledSubgraph subgraph_;
  std::uint64_t closed_ = 0;
};

/// Priority edge sampling. Per stream edge e, in order:
///   1. admit e into g with probability p;
///   2. close every open pooled wedge whose missing edge is e;
///   3. offer the pool every wedge formed by e and a distinct edge of g
///      sharing one endpoint with it.
/// A triangle is counted only if its first edge entered g and the wedge
/// formed by its second edge survives in the pool, so with
/// q = min(1, n / candidates) the estimate closed / (p q) is unbiased.
class PesEstimator {
 public:
  PesEstimator(double p, std::size_t pool_capacity) : p_(p), pool_(checked_capacity(pool_capacity)) {
    detail::check_probability(p);
  }

  template <RandomSource R>
  void process(const Edge& e, R& rng) {
    if (rng.bernoulli(p_)) subgraph_.insert(e);
    pool_.close_wedges(e);
    for (NodeId center : {e.u, e.v}) {
      const NodeId end = e.other(center);
      for (NodeId w : subgraph_.neighbors(center)) {
        if (w == end) continue;
        pool_.offer(Wedge(w, center, end), rng);
      }
    }
  }

  const SampledSubgraph& subgraph() const { return subgraph_; }
  const WedgePool& pool() const { return pool_; }
  double replacement_probability() const { return pool_.replacement_probability(); }

  EstimateResult result() const {
    EstimateResult r;
    r.method = Method::pes;
    r.p = p_;
    r.q = pool_.replacement_probability();
    r.pool_capacity = pool_.capacity();
    r.triangles_observed = pool_.closed_count();
    r.candidate_wedges = pool_.candidate_count();
    r.estimate = static_cast<double>(r.triangles_observed) / (p_ * *r.q);
    r.subgraph_edges = subgraph_.edge_count();
    r.pool_size = pool_.size();
    r.sample_size = r.subgraph_edges + *r.pool_size;
    r.estimated_rse = detail::inverse_sqrt_or_empty(r.triangles_observed);
    return r;
  }

 private:
  static std::size_t checked_capacity(std::size_t n) {
    if (n < 1) throw ParameterError("pool size n must be at least 1, got " + std::to_string(n));
    return n;
  }

  double p_;
  SampledSubgraph subgraph_;
  WedgePool pool_;
};

template <RandomSource R>
EstimateResult nes_run(const EdgeList& stream, double p, R& rng) {
  NesEstimator est(p);
  for (const Edge& e : stream) est.process(e, rng);
  return est.result();
}

template <RandomSource R>
EstimateResult pes_run(const EdgeList& stream, double p, std::size_t n, R& rng) {
  PesEstimator est(p, n);
  for (const Edge& e : stream) est.process(e, rng);
  return est.result();
}

}  // namespace tristream
