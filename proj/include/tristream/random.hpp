#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tristream {

/// Source of the two kinds of random decisions the estimators make: biased
/// coin flips (edge admission, pool replacement) and uniform slot picks.
/// Estimators take the source as an explicit argument so that a run can be
/// replayed from a seed or from a scripted decision list.
template <typename R>
concept RandomSource = requires(R& rng, double prob, std::size_t n) {
  { rng.bernoulli(prob) } -> std::same_as<bool>;
  { rng.uniform_index(n) } -> std::convertible_to<std::size_t>;
};

/// Deterministic generator seeded by a 64-bit integer.
class SeededRandom {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0,1) from the top 53 bits of one engine draw.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // True iff Random[0,1) < prob.
  bool bernoulli(double prob) { return uniform01() < prob; }

  // Uniform on {0, ..., n-1}; n must be positive.
  std::size_t uniform_index(std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Replays a pre-programmed list of decisions. Coin flips and slot picks are
/// consumed from two independent queues in call order; running out of either
/// is a logic error in the script.
class ScriptedRandom {
 public:
  ScriptedRandom(std::vector<bool> flips, std::vector<std::size_t> picks)
      : flips_(std::move(flips)), picks_(std::move(picks)) {}

  bool bernoulli(double /*prob*/) {
    if (next_flip_ >= flips_.size()) throw std::logic_error("scripted random: coin flips exhausted");
    return flips_[next_flip_++];
  }

  std::size_t uniform_index(std::size_t n) {
    if (next_pick_ >= picks_.size()) throw std::logic_error("scripted random: slot picks exhausted");
    const std::size_t pick = picks_[next_pick_++];
    if (pick >= n) throw std::logic_error("scripted random: slot pick out of range");
    return pick;
  }

  std::size_t flips_consumed() const { return next_flip_; }
  std::size_t picks_consumed() const { return next_pick_; }
  bool exhausted() const { return next_flip_ == flips_.size() && next_pick_ == picks_.size(); }

 private:
  std::vector<bool> flips_;
  std::vector<std::size_t> picks_;
  std::size_t next_flip_ = 0;
  std::size_t next_pick_ = 0;
};

static_assert(RandomSource<SeededRandom>);
static_assert(RandomSource<ScriptedRandom>);

}  // namespace tristream
