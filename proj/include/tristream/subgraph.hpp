#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tristream/graph.hpp"

namespace tristream {

/// The edges admitted from the stream so far, indexed by endpoint.
class SampledSubgraph {
 public:
  // Returns false if the edge was already present.
  bool insert(const Edge& e) {
    if (!edges_.insert(e).second) return false;
    incidence_[e.u].push_back(e.v);
    incidence_[e.v].push_back(e.u);
    return true;
  }

  bool contains(const Edge& e) const { return edges_.contains(e); }

  // Sampled-edge neighbors of v in insertion order; empty for unseen nodes.
  std::span<const NodeId> neighbors(NodeId v) const {
    const auto it = incidence_.find(v);
    if (it == incidence_.end()) return {};
    return it->second;
  }

  // Calls fn(c) for every c with (x,c) and (c,y) both sampled.
  template <typename Fn>
  void for_each_common_neighbor(NodeId x, NodeId y, Fn&& fn) const {
    auto nx = neighbors(x);
    auto ny = neighbors(y);
    if (nx.size() > ny.size()) {
      std::swap(nx, ny);
      std::swap(x, y);
    }
    for (NodeId c : nx) {
      if (c != y && edges_.contains(Edge(c, y))) fn(c);
    }
  }

  std::size_t edge_count() const { return edges_.size(); }

 private:
  std::unordered_set<Edge, EdgeHash> edges_;
  std::unordered_map<NodeId, std::vector<NodeId>> incidence_;
};

inline std::unordered_set<NodeId> neighbors_in_subgraph(const SampledSubgraph& g, NodeId v) {
  const auto adj = g.neighbors(v);
  return {adj.begin(), adj.end()};
}

}  // namespace tristream
