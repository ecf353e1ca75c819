#pragma once

#include <Eigen/Dense>
#include <map>

#include "pea/island_model.hpp"

namespace pea {

// Exact Markov chain of the full island model on tiny instances. States are
// joint genome tuples (2^(n*mu) of them); one generation is the exact
// composition of the per-island mutation/selection kernel with the
// migration kernel, enumerated edge-subset by edge-subset with (p, 1-p)
// weights and (1/n, 1-1/n) bit-flip weights. Intended as ground truth for
// the sampling simulator, so everything is computed to solver precision --
// and is exponential in n*mu; keep instances at desk scale.
struct ChainModel {
  int n = 0;
  int mu = 0;
  int64_t tau = 1;
  uint64_t num_states = 0;
  Objective objective;
  Eigen::MatrixXd plain;      // one generation without migration
  Eigen::MatrixXd migrating;  // one generation including migration
  std::vector<uint8_t> absorbing;

  // lazily solved expected absorption generations from each state, taken at
  // the phase right after a migration generation
  std::vector<double> hit;
  bool solved = false;
};

ChainModel build_chain(const ModelConfig& cfg, uint64_t max_states = 65536);

// island v's genome occupies bits [n*v, n*(v+1)) of the state index
uint64_t encode_state(const std::vector<BitString>& genomes);

double expected_absorption_time(ChainModel& chain, uint64_t start_state);

// expectation over the uniform random initialization the simulator uses
double expected_absorption_time_uniform(ChainModel& chain);

// Memoized oracle values keyed by the config signature. Honors
// cfg.fixed_start when set, otherwise averages over uniform initialization.
// Not thread-safe; use from one thread.
class OracleCache {
 public:
  double expected_time(const ModelConfig& cfg);
  size_t size() const { return memo_.size(); }

 private:
  std::map<std::string, double> memo_;
};

}  // namespace pea
