#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

#include "tristream/graph.hpp"

namespace tristream {

/// Symmetric in-memory adjacency with sorted neighbor lists.
class AdjacencyGraph {
 public:
  AdjacencyGraph() = default;

  explicit AdjacencyGraph(const EdgeList& list) : edge_count_(list.edge_count()) {
    adjacency_.reserve(list.node_count());
    for (const Edge& e : list) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& [node, neighbors] : adjacency_) std::sort(neighbors.begin(), neighbors.end());
  }

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    const auto it = adjacency_.find(v);
    if (it == adjacency_.end()) return {};
    return it->second;
  }

  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  bool has_edge(NodeId a, NodeId b) const {
    const auto adj = neighbors(a);
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  const std::unordered_map<NodeId, std::vector<NodeId>>& adjacency() const { return adjacency_; }

 private:
  std::unordered_map<NodeId, std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

inline AdjacencyGraph build_adjacency(const EdgeList& list) { return AdjacencyGraph(list); }

/// Exact ground truth for one graph.
struct GraphStats {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
  std::uint64_t shared_pairs = 0;  // pairs of triangles sharing an edge
  double clustering = 0.0;         // 3 * triangles / wedges, 0 without wedges

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

namespace detail {

// Forward algorithm over a degree-ordered orientation. Every edge points from
// lower to higher (degree, id) rank, so each triangle is found exactly once,
// from its lowest-ranked corner. Per-edge triangle counts are accumulated on
// the oriented CSR slots.
struct TriangleCensus {
  std::uint64_t triangles = 0;
  std::uint64_t shared_pairs = 0;

  explicit TriangleCensus(const AdjacencyGraph& graph) {
    const auto& adjacency = graph.adjacency();
    std::vector<NodeId> order;
    order.reserve(adjacency.size());
    for (const auto& [node, neighbors] : adjacency) order.push_back(node);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      const std::size_t da = adjacency.at(a).size();
      const std::size_t db = adjacency.at(b).size();
      return da != db ? da < db : a < b;
    });
    std::unordered_map<NodeId, std::uint32_t> rank;
    rank.reserve(order.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) rank.emplace(order[i], i);

    std::vector<std::size_t> offset(order.size() + 1, 0);
    std::vector<std::uint32_t> out;
    out.reserve(graph.edge_count());
    for (std::uint32_t r = 0; r < order.size(); ++r) {
      const std::size_t begin = out.size();
      for (NodeId w : adjacency.at(order[r])) {
        const std::uint32_t rw = rank.at(w);
        if (rw > r) out.push_back(rw);
      }
      std::sort(out.begin() + static_cast<std::ptrdiff_t>(begin), out.end());
      offset[r + 1] = out.size();
    }

    std::vector<std::uint64_t> per_edge(out.size(), 0);
    for (std::uint32_t u = 0; u < order.size(); ++u) {
      for (std::size_t i = offset[u]; i < offset[u + 1]; ++i) {
        const std::uint32_t v = out[i];
        std::size_t a = offset[u];
        std::size_t b = offset[v];
        while (a < offset[u + 1] && b < offset[v + 1]) {
          if (out[a] < out[b]) {
            ++a;
          } else if (out[b] < out[a]) {
            ++b;
          } else {
            ++triangles;
            ++per_edge[i];
            ++per_edge[a];
            ++per_edge[b];
            ++a;
            ++b;
          }
        }
      }
    }
    for (std::uint64_t t : per_edge) shared_pairs += t * (t - (t > 0 ? 1 : 0)) / 2;
  }
};

}  // namespace detail

inline std::uint64_t count_triangles(const AdjacencyGraph& graph) {
  return detail::TriangleCensus(graph).triangles;
}

inline std::uint64_t count_wedges(const AdjacencyGraph& graph) {
  std::uint64_t wedges = 0;
  for (const auto& [node, neighbors] : graph.adjacency()) {
    const std::uint64_t d = neighbors.size();
    wedges += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return wedges;
}

// Sum over edges of t_e (t_e - 1) / 2, t_e = triangles containing the edge.
inline std::uint64_t count_shared_pairs(const AdjacencyGraph& graph) {
  return detail::TriangleCensus(graph).shared_pairs;
}

inline GraphStats stats(const AdjacencyGraph& graph) {
  const detail::TriangleCensus census(graph);
  GraphStats s;
  s.nodes = graph.node_count();
  s.edges = graph.edge_count();
  s.triangles = census.triangles;
  s.wedges = count_wedges(graph);
  s.shared_pairs = census.shared_pairs;
  s.clustering = s.wedges > 0 ? 3.0 * static_cast<double>(s.triangles) / static_cast<double>(s.wedges) : 0.0;
  return s;
}

inline GraphStats stats(const EdgeList& list) { return stats(build_adjacency(list)); }

}  // namespace tristream
