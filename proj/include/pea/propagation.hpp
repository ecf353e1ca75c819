#pragma once

#include <cstdint>
#include <vector>

#include "pea/rng.hpp"
#include "pea/topology.hpp"

namespace pea {

// Pure information-spreading process: in each synchronous round every edge
// whose source was informed at the start of the round independently informs
// its target with probability p. Informed vertices never revert.
struct PropagationState {
  std::vector<uint8_t> informed;
  int64_t round = 0;
  int count = 0;
};

PropagationState propagation_start(const TopologyGraph& g, int source);

// one synchronous round against a frozen snapshot of the informed set
void propagate_step(PropagationState& st, const TopologyGraph& g, double p, Rng& rng);

// First-hitting rounds of informed-set sizes. t[k-1] is the first round with
// at least k informed vertices (t[0] = 0 for the source); entries that the
// round budget did not reach stay at kUnattained -- exhaustion is data, not
// an error.
struct HittingTimes {
  static constexpr int64_t kUnattained = -1;
  std::vector<int64_t> t;
  bool complete() const {
    for (int64_t v : t)
      if (v == kUnattained) return false;
    return true;
  }
};

HittingTimes run_hitting_times(const TopologyGraph& g, double p, int source, int64_t budget,
                               Rng& rng);

}  // namespace pea
