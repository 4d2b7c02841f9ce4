#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tristream/error.hpp"
#include "tristream/graph.hpp"
#include "tristream/random.hpp"

namespace tristream {

/// Length-two path a - center - b. Outer endpoints are unordered, so
/// (7,6,8) and (8,6,7) are the same wedge; a < b is stored.
struct Wedge {
  NodeId a = 0;
  NodeId center = 0;
  NodeId b = 0;
  bool closed = false;

  Wedge() = default;
  Wedge(NodeId end1, NodeId mid, NodeId end2)
      : a(std::min(end1, end2)), center(mid), b(std::max(end1, end2)) {
    if (end1 == end2 || end1 == mid || end2 == mid) throw ParameterError("wedge with repeated node");
  }

  // The edge whose arrival closes the wedge into a triangle.
  Edge closing_edge() const { return Edge(a, b); }

  bool same_path(const Wedge& other) const { return a == other.a && center == other.center && b == other.b; }

  friend bool operator==(const Wedge&, const Wedge&) = default;
};

/// Fixed-capacity reservoir of candidate wedges.
///
/// Every offered wedge bumps the candidate counter. While the pool has free
/// slots the wedge is appended; afterwards it replaces a uniformly chosen
/// slot with probability capacity / candidates. After any number of offers,
/// each offered wedge is in the pool with probability
/// min(1, capacity / candidates). The closed counter tracks how many slots
/// hold closed wedges and is decremented when a closed wedge is evicted.
class WedgePool {
 public:
  explicit WedgePool(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw ParameterError("pool capacity must be at least 1");
    slots_.reserve(std::min<std::size_t>(capacity, 1 << 16));
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return slots_.size(); }
  bool full() const { return slots_.size() >= capacity_; }
  std::uint64_t candidate_count() const { return candidates_; }
  std::uint64_t closed_count() const { return closed_; }
  const std::vector<Wedge>& slots() const { return slots_; }

  // min(1, capacity / candidates); 1 before the first candidate.
  double replacement_probability() const {
    if (candidates_ <= capacity_) return 1.0;
    return static_cast<double>(capacity_) / static_cast<double>(candidates_);
  }

  // Marks every open pooled wedge closed by e; returns how many changed.
  std::size_t close_wedges(const Edge& e) {
    const auto it = by_closing_edge_.find(e);
    if (it == by_closing_edge_.end()) return 0;
    std::size_t newly_closed = 0;
    for (std::uint32_t slot : it->second) {
      if (!slots_[slot].closed) {
        slots_[slot].closed = true;
        ++closed_;
        ++newly_closed;
      }
    }
    return newly_closed;
  }

  // Registers a new candidate and admits it per the reservoir rule.
  // Returns true if the wedge entered the pool.
  template <RandomSource R>
  bool offer(Wedge w, R& rng) {
    ++candidates_;
    w.closed = false;
    if (!full()) {
      slots_.push_back(w);
      index_slot(static_cast<std::uint32_t>(slots_.size() - 1));
      return true;
    }
    const double q = static_cast<double>(capacity_) / static_cast<double>(candidates_);
    if (!rng.bernoulli(q)) return false;
    const auto victim = static_cast<std::uint32_t>(rng.uniform_index(slots_.size()));
    if (slots_[victim].closed) --closed_;
    unindex_slot(victim);
    slots_[victim] = w;
    index_slot(victim);
    return true;
  }

  // Recounts closed slots and checks the closing-edge index against the
  // slot array. O(capacity).
  bool audit() const {
    if (slots_.size() != std::min<std::uint64_t>(capacity_, candidates_)) return false;
    const auto closed = static_cast<std::uint64_t>(
        std::count_if(slots_.begin(), slots_.end(), [](const Wedge& w) { return w.closed; }));
    if (closed != closed_) return false;
    std::size_t indexed = 0;
    for (const auto& [edge, list] : by_closing_edge_) {
      for (std::uint32_t slot : list) {
        if (slot >= slots_.size() || slots_[slot].closing_edge() != edge) return false;
      }
      indexed += list.size();
    }
    return indexed == slots_.size();
  }

 private:
  void index_slot(std::uint32_t slot) { by_closing_edge_[slots_[slot].closing_edge()].push_back(slot); }

  void unindex_slot(std::uint32_t slot) {
    const auto it = by_closing_edge_.find(slots_[slot].closing_edge());
    auto& list = it->second;
    list.erase(std::find(list.begin(), list.end(), slot));
    if (list.empty()) by_closing_edge_.erase(it);
  }

  std::size_t capacity_;
  std::vector<Wedge> slots_;
  std::unordered_map<Edge, std::vector<std::uint32_t>, EdgeHash> by_closing_edge_;
  std::uint64_t candidates_ = 0;
  std::uint64_t closed_ = 0;
};

}  // namespace tristream
