#pragma once

#include <functional>
#include <optional>

#include "pea/objective.hpp"
#include "pea/topology.hpp"

namespace pea {

// Standard bit mutation: every bit flips independently with probability 1/n.
// Sampled as (flip count ~ Binomial(n, 1/n), then a uniform subset of that
// size), which is the same distribution evaluated in O(1 + flips) instead of
// O(n). The count CDF is precomputed once per length.
class MutationSampler {
 public:
  explicit MutationSampler(int n);
  // flips bits of x in place; the flipped positions are recorded so callers
  // can undo a rejected offspring without copying the genome
  void apply(BitString& x, Rng& rng, std::vector<int>& flipped) const;

 private:
  int n_;
  std::vector<double> cdf_;  // cdf_[c] = P(count <= c)
};

BitString standard_bit_mutation(const BitString& x, Rng& rng);

struct ModelConfig {
  Objective objective;
  TopologyGraph topology;
  double p = 0.0;                   // per-edge migration probability
  int64_t tau = 1;                  // migrate when generation % tau == 0
  int64_t budget = 100'000'000;     // generation cap
  uint64_t seed = 1;
  std::optional<BitString> fixed_start;  // placed on every island when set
};

struct RunOutcome {
  int64_t t_par = 0;  // completed generations until an optimum was evaluated
  int64_t t_seq = 0;  // mu * t_par (initialization excluded)
  int64_t t_com = 0;  // migrant copies sent (counted whether or not accepted)
  bool success = false;
  int64_t best_fitness = 0;
};

// Snapshot handed to the trace observer after each completed generation.
struct GenerationView {
  int64_t gen;
  const std::vector<BitString>* genomes;
  const std::vector<int64_t>* fitness;
};
using StepObserver = std::function<void(const GenerationView&)>;

// One generation each: (1) every island mutates and keeps the offspring iff
// its fitness is >= the parent's; (2) in migration generations every directed
// edge independently carries a copy of the source's individual with
// probability p, read from a snapshot taken after phase 1; (3) every island
// adopts a maximum-fitness incoming migrant (ties uniform) iff its fitness is
// >= the island's current one. Stops after the generation in which some
// island first holds an optimum (that generation counts as completed).
RunOutcome run_model(const ModelConfig& cfg);
RunOutcome run_model_traced(const ModelConfig& cfg, const StepObserver& observe);

}  // namespace pea
