#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tristream/error.hpp"
#include "tristream/random.hpp"

namespace tristream {

// Opaque node label. No contiguity is assumed anywhere in the library.
using NodeId = std::uint64_t;

/// Undirected edge in canonical orientation (u < v).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  // Orders the endpoints; a == b is a precondition violation.
  Edge(NodeId a, NodeId b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw ParameterError("self-loop edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }

  bool has(NodeId x) const { return x == u || x == v; }
  // The endpoint that is not x; x must be an endpoint.
  NodeId other(NodeId x) const { return x == u ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return static_cast<std::size_t>(detail::mix64(detail::mix64(e.u) ^ e.v));
  }
};

/// Ordered, duplicate-free sequence of canonical edges. This is both the
/// parsed graph and the stream fed to the estimators.
class EdgeList {
 public:
  EdgeList() = default;

  // Normalizes raw endpoint pairs: drops self-loops, collapses duplicates,
  // orients canonically, keeps first-occurrence order.
  static EdgeList from_pairs(const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    EdgeList list;
    std::unordered_set<Edge, EdgeHash> seen;
    std::unordered_set<NodeId> nodes;
    seen.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      if (a == b) continue;
      const Edge e(a, b);
      if (!seen.insert(e).second) continue;
      list.edges_.push_back(e);
      nodes.insert(a);
      nodes.insert(b);
    }
    list.node_count_ = nodes.size();
    return list;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }

  // Same edges in a different order; node count is unchanged.
  EdgeList reordered(std::vector<Edge> edges) const {
    EdgeList list;
    list.edges_ = std::move(edges);
    list.node_count_ = node_count_;
    return list;
  }

  friend bool operator==(const EdgeList&, const EdgeList&) = default;

 private:
  std::vector<Edge> edges_;
  std::size_t node_count_ = 0;
};

struct StreamSeed {
  std::uint64_t value = 0;
};

struct ParseOptions {
  // A line whose first non-blank character is one of these is a comment.
  std::string comment_prefixes = "#%";
  // Abort with a ParseError once more than this many edge lines are read.
  std::optional<std::size_t> max_edges;
};

namespace detail {

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

inline std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_blank(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_blank(rest[j])) ++j;
  std::string_view token = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return token;
}

inline NodeId parse_node(std::string_view token, std::size_t line) {
  if (token.empty()) throw ParseError(line, "expected two node ids");
  NodeId value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "invalid node id '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace detail

/// Reads a whitespace-separated edge list. Tokens past the second on a line
/// are ignored (weight and timestamp columns).
inline EdgeList parse_edge_list(std::istream& in, const ParseOptions& options = {}) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::string_view first = detail::next_token(rest);
    if (first.empty()) continue;
    if (options.comment_prefixes.find(first.front()) != std::string::npos) continue;
    const NodeId a = detail::parse_node(first, line_no);
    const NodeId b = detail::parse_node(detail::next_token(rest), line_no);
    pairs.emplace_back(a, b);
    if (options.max_edges && pairs.size() > *options.max_edges) {
      throw ParseError(line_no, "edge budget of " + std::to_string(*options.max_edges) + " exceeded");
    }
  }
  return EdgeList::from_pairs(pairs);
}

inline EdgeList parse_edge_list(std::string_view text, const ParseOptions& options = {}) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, options);
}

// One "u v" line per edge, canonical orientation.
inline void serialize_edge_list(const EdgeList& list, std::ostream& out) {
  for (const Edge& e : list) out << e.u << ' ' << e.v << '\n';
}

inline std::string serialize_edge_list(const EdgeList& list) {
  std::ostringstream out;
  serialize_edge_list(list, out);
  return out.str();
}

/// Fisher-Yates permutation of the stream driven by an arbitrary source.
template <RandomSource R>
EdgeList shuffle_stream(const EdgeList& list, R& rng) {
  std::vector<Edge> edges = list.edges();
  for (std::size_t i = edges.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(edges[i - 1], edges[j]);
  }
  return list.reordered(std::move(edges));
}

inline EdgeList shuffle_stream(const EdgeList& list, StreamSeed seed) {
  SeededRandom rng(seed.value);
  return shuffle_stream(list, rng);
}

}  // namespace tristream
