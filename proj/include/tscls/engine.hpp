#pragma once

// Gillespie direct-method simulation over the typed transition relation.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tscls/core.hpp"
#include "tscls/match.hpp"
#include "tscls/model.hpp"
#include "tscls/semantics.hpp"

namespace tscls {

/// PCG-XSH-RR generator: 64-bit LCG state, 32-bit permuted output. The stream
/// selects one of 2^63 independent sequences for the same seed.
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0);

  result_type operator()();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

struct Step {
  double dt = 0.0;
  Transition chosen;
  double total_rate = 0.0;
};

/// One Gillespie step. nullopt when no transition is enabled. The waiting
/// time is drawn first (-ln(1-u)/R), the transition second, by cumulative-rate
/// inversion over transitions() order.
std::optional<Step> step(const Term& state, const RuleSet& rs, Pcg32& rng);

struct TraceEvent {
  std::uint64_t step = 0;  // 1-based index of the event
  double time = 0.0;
  std::size_t rule_index = 0;
  std::string rule_id;
  CompartmentPath path;
  double rate = 0.0;
  double total_exit_rate = 0.0;
};

struct ObservedValue {
  std::uint64_t total = 0;
  // Filled for per-compartment observables only.
  std::vector<std::pair<CompartmentPath, std::uint64_t>> per_compartment;

  friend bool operator==(const ObservedValue&, const ObservedValue&) = default;
};

struct Sample {
  double time = 0.0;
  std::uint64_t step = 0;  // events that happened at or before `time`
  std::vector<ObservedValue> values;  // one per observable
};

enum class HaltReason { NoTransitions, TimeLimit, StepLimit };
const char* halt_reason_name(HaltReason r);

struct Trace {
  std::vector<ObservableSpec> observables;
  std::vector<TraceEvent> events;
  std::vector<Sample> samples;
  Term final_state;
  double final_time = 0.0;  // clock after the last event
  std::uint64_t steps = 0;
  HaltReason halt = HaltReason::NoTransitions;
};

/// Free copies of `e` (one-element sequence components) summed over all
/// compartments, membrane multiplicities included.
std::uint64_t count_free(const Term& state, const Element& e);
ObservedValue observe(const Term& state, const ObservableSpec& spec);

/// Evenly spaced observation times 0, tmax/(n-1), ..., tmax; a single time 0
/// when tmax is 0 or only one sample is requested.
std::vector<double> sample_times(const SimConfig& cfg);

/// Runs from model.init until no transition is enabled, the clock would pass
/// cfg.tmax, or cfg.max_steps events happened. Identical inputs give identical
/// traces.
Trace simulate(const ModelFile& model, const SimConfig& cfg);
Trace simulate(const ModelFile& model, const Term& init, const SimConfig& cfg);

/// Replica i runs with seed cfg.seed + i. The OpenMP version runs replicas
/// concurrently; the serial one is the reference it must agree with.
std::vector<Trace> simulate_ensemble(const ModelFile& model, const SimConfig& cfg, std::size_t replicas);
std::vector<Trace> simulate_ensemble_serial(const ModelFile& model, const SimConfig& cfg, std::size_t replicas);

}  // namespace tscls
