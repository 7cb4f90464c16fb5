// tscls: check models, list transitions, run stochastic simulations.
//
// Exit codes: 0 success, 1 invalid model or simulation error, 2 I/O error.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tscls/engine.hpp"
#include "tscls/error.hpp"
#include "tscls/syntax.hpp"
#include "tscls/trace_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIo = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool color_enabled() {
  const char* v = std::getenv("TSCLS_COLOR");
  return v && std::string(v) == "1";
}

void report(const std::string& where, const std::string& msg) {
  const bool color = color_enabled();
  std::cerr << (color ? "\033[1;31merror:\033[0m " : "error: ");
  if (!where.empty()) std::cerr << where << ": ";
  std::cerr << msg << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

// Runs `body`, mapping library exceptions onto diagnostics and exit codes.
template <class F>
int guarded(const std::string& file, F body) {
  try {
    return body();
  } catch (const IoError& e) {
    report("", e.what());
    return kIo;
  } catch (const tscls::ParseError& e) {
    report(file + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()), e.message());
    return kInvalid;
  } catch (const tscls::ValidationError& e) {
    for (const auto& p : e.problems()) report(file, p);
    return kInvalid;
  } catch (const tscls::Error& e) {
    report(file, e.what());
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    report(file, e.what());
    return kInvalid;
  }
}

// Orders rule ids with embedded numbers numerically (R2 before R10).
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      auto na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

int cmd_check(const std::string& file) {
  return guarded(file, [&] {
    auto model = tscls::parse_model(read_file(file));
    std::cout << "ok: " << model.rules.size() << " rules, " << tscls::model_elements(model).size()
              << " elements\n";
    return kOk;
  });
}

int cmd_transitions(const std::string& file, const std::optional<std::string>& state_text) {
  return guarded(file, [&] {
    auto model = tscls::parse_model(read_file(file));
    tscls::Term state = model.init;
    if (state_text) state = tscls::parse_term(*state_text);
    tscls::TypeEnv env = tscls::model_type_env(model);
    std::set<tscls::Element> present;
    tscls::collect_elements(state, present);
    env.fill_defaults(present);

    auto trs = tscls::transitions(state, {model.rules, env, model.constants, model.typing});
    std::stable_sort(trs.begin(), trs.end(), [](const tscls::Transition& a, const tscls::Transition& b) {
      if (a.rule_id != b.rule_id) return natural_less(a.rule_id, b.rule_id);
      return a.path < b.path;
    });
    for (const auto& t : trs) {
      std::cout << t.rule_id << ' ' << t.path.str() << ' ' << tscls::format_real(t.rate) << ' '
                << tscls::print_term(t.target) << '\n';
    }
    return kOk;
  });
}

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tmax;
  std::optional<std::uint64_t> max_steps;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> out;
  std::string format = "csv";
  std::size_t replicas = 1;
};

std::string replica_path(const std::string& out, std::uint64_t seed) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  const std::string tag = ".seed" + std::to_string(seed);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + tag;
  return out.substr(0, dot) + tag + out.substr(dot);
}

void print_summary(const tscls::Trace& t, std::uint64_t seed, bool with_seed) {
  const std::string prefix = with_seed ? "seed " + std::to_string(seed) + " " : "";
  std::cout << prefix << "steps: " << t.steps << '\n';
  std::cout << prefix << "final_time: " << tscls::format_real(t.final_time) << '\n';
  std::cout << prefix << "halt: " << tscls::halt_reason_name(t.halt) << '\n';
  for (const auto& o : t.observables) {
    std::cout << prefix << o.element.name() << ": " << tscls::count_free(t.final_state, o.element) << '\n';
  }
}

void write_trace(const std::string& path, const tscls::Trace& t, const std::string& format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path + "'");
  if (format == "json") {
    tscls::write_json(os, t);
  } else {
    tscls::write_csv(os, t);
  }
  os.flush();
  if (!os) throw IoError("error while writing '" + path + "'");
}

int cmd_run(const std::string& file, const RunOptions& opt) {
  return guarded(file, [&] {
    auto model = tscls::parse_model(read_file(file));
    tscls::SimConfig cfg = model.run.apply({});
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.tmax) cfg.tmax = *opt.tmax;
    if (opt.max_steps) cfg.max_steps = *opt.max_steps;
    if (opt.samples) cfg.samples = *opt.samples;

    if (opt.replicas <= 1) {
      auto trace = tscls::simulate(model, cfg);
      if (opt.out) write_trace(*opt.out, trace, opt.format);
      print_summary(trace, cfg.seed, false);
      return kOk;
    }
    auto traces = tscls::simulate_ensemble(model, cfg, opt.replicas);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      const std::uint64_t seed = cfg.seed + i;
      if (opt.out) write_trace(replica_path(*opt.out, seed), traces[i], opt.format);
      print_summary(traces[i], seed, true);
    }
    return kOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed stochastic calculus of looping sequences: model checker and simulator"};
  app.require_subcommand(1);

  std::string file;

  auto* check = app.add_subcommand("check", "Parse and validate a model file");
  check->add_option("file", file, "Model file")->required();

  std::optional<std::string> state;
  auto* trans = app.add_subcommand("transitions", "List the transitions of the initial (or given) state");
  trans->add_option("file", file, "Model file")->required();
  trans->add_option("--state", state, "Term to use instead of the model's init");

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Simulate a model");
  run->add_option("file", file, "Model file")->required();
  run->add_option("--seed", ro.seed, "PRNG seed");
  run->add_option("--tmax", ro.tmax, "Simulated time limit")->check(CLI::NonNegativeNumber);
  run->add_option("--max-steps", ro.max_steps, "Event limit")->check(CLI::PositiveNumber);
  run->add_option("--samples", ro.samples, "Number of observation times")->check(CLI::PositiveNumber);
  run->add_option("--out", ro.out, "Trace output file");
  run->add_option("--format", ro.format, "Trace format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--replicas", ro.replicas, "Independent runs with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*check) return cmd_check(file);
  if (*trans) return cmd_transitions(file, state);
  return cmd_run(file, ro);
}
