#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pea/bitstring.hpp"

namespace pea {

enum class Fn { OneMax, LeadingOnes, Jump, Custom };

// A pseudo-boolean maximization target together with what the analytic side
// needs to know about it (attainable value count, optimum).
//
// Custom objectives must be unimodal (every non-optimal point has a strictly
// improving Hamming neighbor) and take values in {0, ..., d}; evaluation is
// delegated to the supplied callable.
struct Objective {
  Fn kind = Fn::OneMax;
  int n = 0;
  int k = 0;  // jump gap width
  int d = 0;  // custom: number of values minus one
  std::function<int64_t(const BitString&)> custom_eval;
  std::string name;  // spelled form: onemax | lo | jump:<k> | custom:<name>

  static Objective onemax(int n);
  static Objective leading_ones(int n);
  static Objective jump(int k, int n);
  static Objective custom(const std::string& name, int n, int d,
                          std::function<int64_t(const BitString&)> eval);
};

int64_t evaluate(const Objective& f, const BitString& x);
int64_t optimum_value(const Objective& f);

// Canonical fitness-level partition: levels are the attainable fitness values
// in ascending order (1-based; level m holds exactly the global optima), and
// s[i-1] is a per-generation lower bound on the probability that standard
// bit mutation lifts a level-i individual to a higher level.
struct LevelPartition {
  int m = 0;
  std::vector<int64_t> values;  // size m, ascending
  std::vector<double> s;        // size m-1, s[i-1] for level i
};

LevelPartition canonical_partition(const Objective& f);

// 1-based level of a fitness value; UnknownFitness if the value is not
// attainable under the partition
int level_index(const LevelPartition& part, int64_t fitness);

}  // namespace pea
