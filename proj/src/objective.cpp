#include "pea/objective.hpp"

#include <algorithm>
#include <cmath>

namespace pea {

namespace {
const double kE = std::exp(1.0);
}

Objective Objective::onemax(int n) {
  if (n < 1) fail(Err::InvalidSize, "onemax needs n >= 1");
  Objective f;
  f.kind = Fn::OneMax;
  f.n = n;
  f.name = "onemax";
  return f;
}

Objective Objective::leading_ones(int n) {
  if (n < 1) fail(Err::InvalidSize, "lo needs n >= 1");
  Objective f;
  f.kind = Fn::LeadingOnes;
  f.n = n;
  f.name = "lo";
  return f;
}

Objective Objective::jump(int k, int n) {
  if (n < 1) fail(Err::InvalidSize, "jump needs n >= 1");
  if (k < 1 || k > n) fail(Err::InvalidSize, "jump needs 1 <= k <= n");
  Objective f;
  f.kind = Fn::Jump;
  f.n = n;
  f.k = k;
  f.name = "jump:" + std::to_string(k);
  return f;
}

Objective Objective::custom(const std::string& name, int n, int d,
                            std::function<int64_t(const BitString&)> eval) {
  if (n < 1) fail(Err::InvalidSize, "custom objective needs n >= 1");
  if (d < 1) fail(Err::InvalidSize, "custom objective needs d >= 1");
  if (!eval) fail(Err::BadConfig, "custom objective needs an evaluator");
  Objective f;
  f.kind = Fn::Custom;
  f.n = n;
  f.d = d;
  f.custom_eval = std::move(eval);
  f.name = "custom:" + name;
  return f;
}

int64_t evaluate(const Objective& f, const BitString& x) {
  if (x.size() != f.n) fail(Err::LengthMismatch, "bitstring length does not match objective n");
  switch (f.kind) {
    case Fn::OneMax:
      return x.count_ones();
    case Fn::LeadingOnes:
      return x.prefix_ones();
    case Fn::Jump: {
      int64_t ones = x.count_ones();
      if (ones <= f.n - f.k || ones == f.n) return f.k + ones;
      return f.n - ones;
    }
    case Fn::Custom:
      return f.custom_eval(x);
  }
  fail(Err::UnsupportedKind, "bad objective enum");
}

int64_t optimum_value(const Objective& f) {
  switch (f.kind) {
    case Fn::OneMax: return f.n;
    case Fn::LeadingOnes: return f.n;
    case Fn::Jump: return f.n + f.k;
    case Fn::Custom: return f.d;
  }
  fail(Err::UnsupportedKind, "bad objective enum");
}

LevelPartition canonical_partition(const Objective& f) {
  LevelPartition part;
  double en = kE * f.n;
  switch (f.kind) {
    case Fn::OneMax: {
      // fitness v has n - v improving Hamming neighbors (the remaining zeros)
      part.m = f.n + 1;
      for (int v = 0; v <= f.n; ++v) part.values.push_back(v);
      for (int v = 0; v < f.n; ++v) part.s.push_back((f.n - v) / en);
      break;
    }
    case Fn::LeadingOnes: {
      // flipping the first zero is always improving
      part.m = f.n + 1;
      for (int v = 0; v <= f.n; ++v) part.values.push_back(v);
      part.s.assign(f.n, 1.0 / en);
      break;
    }
    case Fn::Jump: {
      // attainable values: 1..k-1 (inside the gap, ones = n - v), then k..n
      // (ones = v - k), then the optimum n + k
      for (int v = 1; v < f.k; ++v) part.values.push_back(v);
      for (int v = f.k; v <= f.n; ++v) part.values.push_back(v);
      part.values.push_back(f.n + f.k);
      part.m = static_cast<int>(part.values.size());
      for (int i = 0; i + 1 < part.m; ++i) {
        int64_t v = part.values[i];
        if (v == f.n) {
          // ones = n - k: the only improvement is flipping all k zeros at once
          part.s.push_back(1.0 / (kE * std::pow(static_cast<double>(f.n), f.k)));
        } else if (v < f.k) {
          // gap: flipping any one improves; at v = 1 flipping the last zero
          // lands exactly on the optimum, so it improves too
          int count = static_cast<int>(f.n - v) + (v == 1 ? 1 : 0);
          part.s.push_back(count / en);
        } else {
          // ones = v - k below the gap: flipping any zero improves
          part.s.push_back((f.n - v + f.k) / en);
        }
      }
      break;
    }
    case Fn::Custom: {
      part.m = f.d + 1;
      for (int v = 0; v <= f.d; ++v) part.values.push_back(v);
      part.s.assign(f.d, 1.0 / en);
      break;
    }
  }
  return part;
}

int level_index(const LevelPartition& part, int64_t fitness) {
  auto it = std::lower_bound(part.values.begin(), part.values.end(), fitness);
  if (it == part.values.end() || *it != fitness)
    fail(Err::UnknownFitness, "fitness value " + std::to_string(fitness) + " is not attainable");
  return static_cast<int>(it - part.values.begin()) + 1;
}

}  // namespace pea
