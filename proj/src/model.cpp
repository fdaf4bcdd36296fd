#include "sparse_ising/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sparse_ising/error.hpp"
#include "sparse_ising/rng.hpp"

namespace sparse_ising {

SpinConfig::SpinConfig(std::vector<Spin> spins) : spins_(std::move(spins)) {
  for (Spin s : spins_) {
    if (s != 1 && s != -1) throw std::invalid_argument("spins must be +1 or -1");
  }
}

SpinConfig SpinConfig::from_bits(std::span<const std::uint8_t> bits) {
  std::vector<Spin> spins(bits.size());
  std::ranges::transform(bits, spins.begin(), [](std::uint8_t b) { return static_cast<Spin>(b ? -1 : 1); });
  return SpinConfig(std::move(spins));
}

std::vector<std::uint8_t> SpinConfig::to_bits() const {
  std::vector<std::uint8_t> bits(spins_.size());
  std::ranges::transform(spins_, bits.begin(), [](Spin s) { return static_cast<std::uint8_t>(s < 0 ? 1 : 0); });
  return bits;
}

SpinConfig SpinConfig::negated() const {
  SpinConfig out = *this;
  for (auto& s : out.spins_) s = static_cast<Spin>(-s);
  return out;
}

Graph::Graph(const ProblemInstance& inst) : n_(inst.n), m_(static_cast<std::int64_t>(inst.edges.size())) {
  std::vector<std::int64_t> degree(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& e : inst.edges) {
    ++degree[static_cast<std::size_t>(e.u - 1)];
    ++degree[static_cast<std::size_t>(e.v - 1)];
    total_weight_ += e.w;
  }
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (std::int32_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];

  neighbors_.resize(static_cast<std::size_t>(offsets_.back()));
  weights_.resize(neighbors_.size());
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : inst.edges) {
    const std::int32_t a = e.u - 1;
    const std::int32_t b = e.v - 1;
    neighbors_[cursor[a]] = b;
    weights_[cursor[a]++] = e.w;
    neighbors_[cursor[b]] = a;
    weights_[cursor[b]++] = e.w;
  }

  for (std::int32_t v = 0; v < n_; ++v) {
    Field sum = 0;
    for (Weight w : weights(v)) sum += w < 0 ? -static_cast<Field>(w) : w;
    max_abs_field_ = std::max(max_abs_field_, sum);
  }
}

namespace {

void require_length(const ProblemInstance& inst, const SpinConfig& cfg) {
  if (cfg.size() != static_cast<std::size_t>(inst.n)) {
    throw LengthMismatch("configuration has " + std::to_string(cfg.size()) + " spins but instance " + inst.id +
                         " has n=" + std::to_string(inst.n));
  }
}

}  // namespace

CutValue cut_value(const ProblemInstance& inst, const SpinConfig& cfg) {
  require_length(inst, cfg);
  CutValue cut = 0;
  for (const auto& e : inst.edges) {
    if (cfg[e.u - 1] != cfg[e.v - 1]) cut += e.w;
  }
  return cut;
}

CutValue ising_energy(const ProblemInstance& inst, const SpinConfig& cfg) {
  require_length(inst, cfg);
  CutValue h = 0;
  for (const auto& e : inst.edges) h += static_cast<CutValue>(e.w) * cfg[e.u - 1] * cfg[e.v - 1];
  return h;
}

SpinConfig random_config(std::size_t n, CounterRng& rng) {
  std::vector<Spin> spins(n);
  std::uint32_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 32 == 0) word = rng();
    spins[i] = (word >> (i % 32)) & 1u ? Spin{-1} : Spin{1};
  }
  return SpinConfig(std::move(spins));
}

SpinConfig random_config(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 0, Stream::Init);
  return random_config(n, rng);
}

IncrementalState::IncrementalState(std::shared_ptr<const Graph> graph, SpinConfig config)
    : graph_(std::move(graph)) {
  if (!graph_) throw std::invalid_argument("IncrementalState needs a graph");
  if (config.size() != static_cast<std::size_t>(graph_->n())) {
    throw LengthMismatch("configuration has " + std::to_string(config.size()) + " spins but graph has n=" +
                         std::to_string(graph_->n()));
  }
  spins_.assign(config.spins().begin(), config.spins().end());
  recompute();
}

void IncrementalState::recompute() {
  const Graph& g = *graph_;
  fields_.assign(static_cast<std::size_t>(g.n()), 0);
  CutValue twice_energy = 0;
  for (std::int32_t i = 0; i < g.n(); ++i) {
    const auto nbrs = g.neighbors(i);
    const auto ws = g.weights(i);
    Field h = 0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) h += static_cast<Field>(ws[k]) * spins_[nbrs[k]];
    fields_[i] = h;
    twice_energy += spins_[i] * h;
  }
  energy_ = twice_energy / 2;
  cut_ = (g.total_weight() - energy_) / 2;
}

CutValue IncrementalState::flip_gain(std::int32_t i) const {
  if (i < 0 || i >= n()) throw std::out_of_range("vertex " + std::to_string(i) + " out of range");
  return gain_unchecked(i);
}

void IncrementalState::apply_flip(std::int32_t i) {
  if (i < 0 || i >= n()) throw std::out_of_range("vertex " + std::to_string(i) + " out of range");
  flip_unchecked(i);
}

void IncrementalState::flip_unchecked(std::int32_t i) noexcept {
  const Spin old = spins_[i];
  const Field h = fields_[i];
  cut_ += old * h;
  energy_ -= 2 * old * h;
  spins_[i] = static_cast<Spin>(-old);
  // s_i changes by -2*old, so each neighbor's field changes by -2*old*w.
  const auto nbrs = graph_->neighbors(i);
  const auto ws = graph_->weights(i);
  const Field step = -2 * static_cast<Field>(old);
  for (std::size_t k = 0; k < nbrs.size(); ++k) fields_[nbrs[k]] += step * ws[k];
}

}  // namespace sparse_ising
