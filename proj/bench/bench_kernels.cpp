// Serial vs OpenMP timings for the two parallel kernels: the transition set of
// a large state and an ensemble of independent replicas.
//
//   bench_kernels [cells] [replicas]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tscls/catalog.hpp"
#include "tscls/engine.hpp"
#include "tscls/semantics.hpp"
#include "tscls/syntax.hpp"

using namespace tscls;

namespace {

template <class F>
double best_of(int reps, F f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

// `cells` bacteria with distinct membranes, so that none share a compartment.
Term population(std::size_t cells) {
  std::string text = "500 * LACT";
  for (std::size_t i = 0; i < cells; ++i) {
    text += " | <m" + std::to_string(i) + ".perm>[ lacI.lacP.lacO.lacZ.lacY.lacA | " + std::to_string(20 + i % 11) +
            " * polym | " + std::to_string(90 + i % 7) + " * repr | Rna | betagal | perm | LACT ]";
  }
  return parse_term(text);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t cells = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 64;
  const std::size_t replicas = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 16;

  const ModelFile model = lac_operon_model();
  const Term state = population(cells);
  TypeEnv env = model_type_env(model);
  std::set<Element> els;
  collect_elements(state, els);
  env.fill_defaults(els);
  const RuleSet rs{model.rules, env, model.constants};

  std::printf("threads: %d\n", omp_get_max_threads());

  std::size_t n_serial = 0, n_parallel = 0;
  const double t_serial = best_of(3, [&] { n_serial = transitions(state, rs).size(); });
  const double t_parallel = best_of(3, [&] { n_parallel = transitions_parallel(state, rs).size(); });
  std::printf("transitions  %3zu cells  %6zu transitions  serial %8.4fs  openmp %8.4fs  speedup %5.2fx%s\n", cells,
              n_serial, t_serial, t_parallel, t_serial / t_parallel, n_serial == n_parallel ? "" : "  MISMATCH");

  SimConfig cfg = model.run.apply({});
  cfg.seed = 1;
  std::vector<Trace> a, b;
  const double e_serial = best_of(1, [&] { a = simulate_ensemble_serial(model, cfg, replicas); });
  const double e_parallel = best_of(1, [&] { b = simulate_ensemble(model, cfg, replicas); });
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].final_state == b[i].final_state;
  std::printf("ensemble     %3zu replicas (tmax %g)      serial %8.4fs  openmp %8.4fs  speedup %5.2fx%s\n",
              replicas, cfg.tmax, e_serial, e_parallel, e_serial / e_parallel, same ? "" : "  MISMATCH");
  return same && n_serial == n_parallel ? 0 : 1;
}
