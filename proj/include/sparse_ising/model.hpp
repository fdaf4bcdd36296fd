#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sparse_ising/instance.hpp"

namespace sparse_ising {

using Spin = std::int8_t;
using Field = std::int64_t;

/// Assignment of the n variables. Spins are +1/-1; as bits, 0 maps to +1 and 1
/// maps to -1. Vertex k (0-based) is variable k+1 of the Gset file.
class SpinConfig {
public:
  SpinConfig() = default;
  /// All spins +1.
  explicit SpinConfig(std::size_t n) : spins_(n, Spin{1}) {}
  explicit SpinConfig(std::vector<Spin> spins);

  static SpinConfig from_bits(std::span<const std::uint8_t> bits);
  std::vector<std::uint8_t> to_bits() const;

  std::size_t size() const noexcept { return spins_.size(); }
  Spin operator[](std::size_t i) const noexcept { return spins_[i]; }
  void flip(std::size_t i) noexcept { spins_[i] = static_cast<Spin>(-spins_[i]); }
  std::span<const Spin> spins() const noexcept { return spins_; }

  /// The globally flipped configuration -sigma.
  SpinConfig negated() const;

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

private:
  std::vector<Spin> spins_;
};

/// Compressed adjacency (offsets + neighbor/weight arrays) built once per
/// instance. Immutable and shareable across threads.
class Graph {
public:
  explicit Graph(const ProblemInstance& inst);

  static std::shared_ptr<const Graph> build(const ProblemInstance& inst) {
    return std::make_shared<const Graph>(inst);
  }

  std::int32_t n() const noexcept { return n_; }
  std::int64_t m() const noexcept { return m_; }
  CutValue total_weight() const noexcept { return total_weight_; }

  std::span<const std::int32_t> neighbors(std::int32_t v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::span<const Weight> weights(std::int32_t v) const noexcept {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::int32_t degree(std::int32_t v) const noexcept {
    return static_cast<std::int32_t>(offsets_[v + 1] - offsets_[v]);
  }
  /// Largest sum of |w| around a vertex; bounds |h_i| and |flip gain|.
  Field max_abs_field() const noexcept { return max_abs_field_; }

private:
  std::int32_t n_;
  std::int64_t m_;
  CutValue total_weight_ = 0;
  Field max_abs_field_ = 0;
  std::vector<std::int64_t> offsets_;
  std::vector<std::int32_t> neighbors_;
  std::vector<Weight> weights_;
};

/// Sum of w_ij over edges whose endpoints disagree. Throws LengthMismatch.
CutValue cut_value(const ProblemInstance& inst, const SpinConfig& cfg);

/// H = sum of w_ij * s_i * s_j over edges; cut == (W - H) / 2.
CutValue ising_energy(const ProblemInstance& inst, const SpinConfig& cfg);

/// Independent uniform spins; deterministic in (n, seed).
SpinConfig random_config(std::size_t n, std::uint64_t seed);

class CounterRng;
SpinConfig random_config(std::size_t n, CounterRng& rng);

/// Spins plus cached local fields h_i = sum_j w_ij s_j, cut and energy.
/// Single owner; flips cost O(degree).
class IncrementalState {
public:
  IncrementalState(std::shared_ptr<const Graph> graph, SpinConfig config);

  /// Change in cut if vertex i were flipped: s_i * h_i. Throws std::out_of_range.
  CutValue flip_gain(std::int32_t i) const;
  void apply_flip(std::int32_t i);

  // Unchecked variants for solver inner loops.
  CutValue gain_unchecked(std::int32_t i) const noexcept { return spins_[i] * fields_[i]; }
  void flip_unchecked(std::int32_t i) noexcept;

  const Graph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const noexcept { return graph_; }
  std::int32_t n() const noexcept { return graph_->n(); }
  Spin spin(std::int32_t i) const noexcept { return spins_[i]; }
  Field field(std::int32_t i) const noexcept { return fields_[i]; }
  CutValue cut() const noexcept { return cut_; }
  CutValue energy() const noexcept { return energy_; }
  std::span<const Spin> spins() const noexcept { return spins_; }
  std::span<const Field> fields() const noexcept { return fields_; }
  SpinConfig config() const { return SpinConfig(spins_); }

  /// Recomputes fields, cut and energy from the spins alone.
  void recompute();

  friend bool operator==(const IncrementalState& a, const IncrementalState& b) {
    return a.graph_ == b.graph_ && a.spins_ == b.spins_ && a.fields_ == b.fields_ && a.cut_ == b.cut_ &&
           a.energy_ == b.energy_;
  }

private:
  std::shared_ptr<const Graph> graph_;
  std::vector<Spin> spins_;
  std::vector<Field> fields_;
  CutValue cut_ = 0;
  CutValue energy_ = 0;
};

}  // namespace sparse_ising
