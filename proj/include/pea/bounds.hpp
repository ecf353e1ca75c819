#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pea/objective.hpp"
#include "pea/topology.hpp"

namespace pea {

// An analytic upper-bound value plus enough context to audit it later: which
// formula produced it, the parameters it saw, and which logarithm base any
// log terms use ("log2", "ln", or empty when no logs appear).
struct BoundReport {
  double value = 0.0;
  std::string source;
  std::string inputs;
  std::string log_base;
};

// Expected sequential optimization time of a single elitist island:
// sum over non-optimal levels of 1/s_i.
double seq_fitness_level_bound(const LevelPartition& part);

// Expected parallel time with a prescribed growth curve of informed islands:
// sum_i sum_{t>=0} (1-s_i)^{E(t)} where E(t) accumulates mu_seq (the number
// of islands on the current level j generations after the level was first
// reached, non-decreasing, values in [1, mu]). With a migration interval
// tau > 1 the exponent uses the start-of-interval value for tau whole
// generations. The series is truncated once a term drops below eps and the
// remainder is added as an analytic geometric tail, which makes the result
// exact to machine precision whenever mu_seq is constant.
double general_parallel_bound(const std::vector<double>& s,
                              const std::function<double(int64_t)>& mu_seq, int64_t tau = 1,
                              double eps = 1e-12);

// Expected generations spent on one level when k informed islands are
// reached after e_tk expected generations: e_tk + 1 + 1/(k*s).
double level_time_bound(double e_tk, double k, double s);

// Closed-form expected-parallel-time bound for a topology kind (published
// totals). p = 0 yields +infinity: with no information flow these formulas
// make no claim, and callers fall back to the sequential bound.
BoundReport topology_bound(Topo kind, const LevelPartition& part, int mu, double p);

// Sharper complete-topology bound with a regime change at p = 1/mu
// (both branches agree there). Requires mu >= 2.
BoundReport complete_refined_bound(const LevelPartition& part, int mu, double p);

enum class PropModel {
  GeneralGrowth,       // any strongly connected graph, path-count argument
  CompleteGraph,       // complete topology
  UndirectedDiameter,  // any undirected graph, diameter-based
};

struct PropagationInputs {
  double p = 0.0;
  // GeneralGrowth: expected rounds until s_k vertices (all within distance k
  // of the source) are informed; c > 1 tunes the restart argument
  double c = 2.0;
  double k = 0.0;
  double s_k = 0.0;
  // CompleteGraph
  int mu = 0;
  // UndirectedDiameter
  int diam = 0;
  int n_vertices = 0;
};

// Expected rounds until the target number of vertices is informed:
//   GeneralGrowth       c/(c-1) * max{4k, 8 ln(c*s_k)} / p
//   CompleteGraph       8 log2(mu) / min(p*mu, 1)
//   UndirectedDiameter  (8 diam + 8 log2 n) / (p (1 - 1/e))
BoundReport propagation_time_bound(PropModel model, const PropagationInputs& in);

// Factor by which the expected number of sent migrant copies can exceed the
// expected parallel time: 2 p mu (rings), 4 p mu (torus), p mu log2 mu
// (hypercube), p mu^2 (complete).
double communication_factor(Topo kind, int mu, double p);

// Tightest per-level combination available for the kind: each level
// contributes the minimum of the trivial single-island cost 1/s_i, the
// strongly-connected (ring) per-level cost, and the kind-specific per-level
// cost(s); levels are then summed. Never exceeds topology_bound or the
// sequential bound, and degrades to the sequential bound as p -> 0.
BoundReport best_bound(const LevelPartition& part, Topo kind, int mu, double p);

}  // namespace pea
