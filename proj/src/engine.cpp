#include "tscls/engine.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "tscls/error.hpp"

namespace tscls {

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream) {
  inc_ = (stream << 1u) | 1u;
  (*this)();
  state_ += seed;
  (*this)();
}

Pcg32::result_type Pcg32::operator()() {
  const std::uint64_t old = state_;
  state_ = old * 6364136223846793005ULL + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

double Pcg32::uniform() {
  const std::uint64_t hi = (*this)() >> 5;  // 27 bits
  const std::uint64_t lo = (*this)() >> 6;  // 26 bits
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

std::optional<Step> step(const Term& state, const RuleSet& rs, Pcg32& rng) {
  auto trs = transitions(state, rs);
  if (trs.empty()) return std::nullopt;
  double total = 0;
  for (const auto& t : trs) total += t.rate;

  const double u_time = rng.uniform();
  const double u_pick = rng.uniform();
  Step s;
  s.total_rate = total;
  s.dt = -std::log(1.0 - u_time) / total;

  const double target = u_pick * total;
  double acc = 0;
  std::size_t pick = trs.size() - 1;
  for (std::size_t i = 0; i < trs.size(); ++i) {
    acc += trs[i].rate;
    if (target < acc) {
      pick = i;
      break;
    }
  }
  s.chosen = std::move(trs[pick]);
  return s;
}

const char* halt_reason_name(HaltReason r) {
  switch (r) {
    case HaltReason::NoTransitions: return "no-transitions";
    case HaltReason::TimeLimit: return "tmax";
    case HaltReason::StepLimit: return "max-steps";
  }
  return "?";
}

std::uint64_t count_free(const Term& state, const Element& e) {
  std::uint64_t n = 0;
  for (const auto& entry : state.entries()) {
    if (entry.component.is_bare(e)) n += entry.count;
    if (entry.component.is_loop()) n += entry.count * count_free(entry.component.content(), e);
  }
  return n;
}

namespace {

std::uint64_t count_here(const Term& t, const Element& e) {
  for (const auto& entry : t.entries()) {
    if (entry.component.is_bare(e)) return entry.count;
  }
  return 0;
}

}  // namespace

ObservedValue observe(const Term& state, const ObservableSpec& spec) {
  ObservedValue v;
  v.total = count_free(state, spec.element);
  if (spec.scope == ObservableSpec::Scope::PerCompartment) {
    for (const auto& c : compartments(state)) v.per_compartment.emplace_back(c.path, count_here(c.content, spec.element));
  }
  return v;
}

std::vector<double> sample_times(const SimConfig& cfg) {
  if (cfg.tmax <= 0 || cfg.samples <= 1) return {0.0};
  std::vector<double> out(cfg.samples);
  const double n = static_cast<double>(cfg.samples - 1);
  for (std::uint64_t i = 0; i < cfg.samples; ++i) out[i] = cfg.tmax * (static_cast<double>(i) / n);
  out.back() = cfg.tmax;
  return out;
}

Trace simulate(const ModelFile& model, const SimConfig& cfg) { return simulate(model, model.init, cfg); }

Trace simulate(const ModelFile& model, const Term& init, const SimConfig& cfg) {
  if (cfg.tmax < 0) throw std::invalid_argument("tmax must be non-negative");
  if (cfg.max_steps == 0 || cfg.samples == 0) throw std::invalid_argument("max_steps and samples must be positive");

  TypeEnv env = model_type_env(model);
  std::set<Element> extra;
  collect_elements(init, extra);
  env.fill_defaults(extra);
  const RuleSet rs{model.rules, env, model.constants, model.typing};

  Trace trace;
  trace.observables = model.observables;
  const auto times = sample_times(cfg);
  std::size_t next_sample = 0;
  Pcg32 rng(cfg.seed);
  Term state = canonicalize(init);
  double clock = 0;

  auto take_samples = [&](auto&& due) {
    while (next_sample < times.size() && due(times[next_sample])) {
      Sample s;
      s.time = times[next_sample++];
      s.step = trace.steps;
      for (const auto& o : model.observables) s.values.push_back(observe(state, o));
      trace.samples.push_back(std::move(s));
    }
  };

  for (;;) {
    if (trace.steps >= cfg.max_steps) {
      trace.halt = HaltReason::StepLimit;
      break;
    }
    std::optional<Step> s;
    try {
      s = step(state, rs, rng);
    } catch (const Error& e) {
      throw EvalError("step " + std::to_string(trace.steps + 1) + ": " + e.what());
    }
    if (!s) {
      trace.halt = HaltReason::NoTransitions;
      break;
    }
    const double when = clock + s->dt;
    if (when > cfg.tmax) {
      trace.halt = HaltReason::TimeLimit;
      break;
    }
    take_samples([&](double t) { return t < when; });
    clock = when;
    state = std::move(s->chosen.target);
    ++trace.steps;
    trace.events.push_back(TraceEvent{trace.steps, clock, s->chosen.rule_index, s->chosen.rule_id,
                                      std::move(s->chosen.path), s->chosen.rate, s->total_rate});
  }

  if (trace.halt == HaltReason::StepLimit) {
    take_samples([&](double t) { return t <= clock; });
  } else {
    take_samples([](double) { return true; });
  }
  trace.final_state = std::move(state);
  trace.final_time = clock;
  return trace;
}

std::vector<Trace> simulate_ensemble_serial(const ModelFile& model, const SimConfig& cfg, std::size_t replicas) {
  std::vector<Trace> out;
  out.reserve(replicas);
  for (std::size_t i = 0; i < replicas; ++i) {
    SimConfig c = cfg;
    c.seed = cfg.seed + i;
    out.push_back(simulate(model, c));
  }
  return out;
}

std::vector<Trace> simulate_ensemble(const ModelFile& model, const SimConfig& cfg, std::size_t replicas) {
  std::vector<Trace> out(replicas);
  std::exception_ptr failure;
  const auto n = static_cast<long>(replicas);

#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      SimConfig c = cfg;
      c.seed = cfg.seed + static_cast<std::uint64_t>(i);
      out[static_cast<std::size_t>(i)] = simulate(model, c);
    } catch (...) {
#pragma omp critical(tscls_ensemble_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace tscls
