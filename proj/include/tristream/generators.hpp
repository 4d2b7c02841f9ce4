#pragma once

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tristream/error.hpp"
#include "tristream/graph.hpp"
#include "tristream/random.hpp"

namespace tristream {

// G(N, prob): every unordered pair of nodes 0..N-1 independently.
inline EdgeList erdos_renyi(std::uint64_t nodes, double prob, std::uint64_t seed) {
  if (!(prob >= 0.0 && prob <= 1.0)) throw ParameterError("edge probability must be in [0, 1]");
  SeededRandom rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < nodes; ++u) {
    for (NodeId v = u + 1; v < nodes; ++v) {
      if (rng.bernoulli(prob)) pairs.emplace_back(u, v);
    }
  }
  return EdgeList::from_pairs(pairs);
}

// Preferential attachment seeded with a clique on m + 1 nodes; each later
// node links to m distinct earlier nodes chosen proportionally to degree.
inline EdgeList barabasi_albert(std::uint64_t nodes, std::uint64_t m, std::uint64_t seed) {
  if (m < 1) throw ParameterError("attachment count m must be at least 1");
  if (nodes < m + 1) throw ParameterError("Barabasi-Albert needs at least m + 1 nodes");
  SeededRandom rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<NodeId> endpoints;  // each node repeated once per incident edge
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) {
      pairs.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::unordered_set<NodeId> targets;
  std::vector<NodeId> ordered;
  for (NodeId v = m + 1; v < nodes; ++v) {
    targets.clear();
    ordered.clear();
    while (ordered.size() < m) {
      const NodeId t = endpoints[rng.uniform_index(endpoints.size())];
      if (targets.insert(t).second) ordered.push_back(t);
    }
    for (NodeId t : ordered) {
      pairs.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return EdgeList::from_pairs(pairs);
}

}  // namespace tristream
