#include "pea/propagation.hpp"

namespace pea {

PropagationState propagation_start(const TopologyGraph& g, int source) {
  if (source < 0 || source >= g.mu) fail(Err::IndexOutOfRange, "source vertex");
  PropagationState st;
  st.informed.assign(g.mu, 0);
  st.informed[source] = 1;
  st.count = 1;
  return st;
}

void propagate_step(PropagationState& st, const TopologyGraph& g, double p, Rng& rng) {
  if (p < 0.0 || p > 1.0) fail(Err::DomainError, "propagation probability outside [0,1]");
  // snapshot: only vertices informed before this round transmit
  static thread_local std::vector<uint8_t> snap;
  snap = st.informed;
  for (auto [u, v] : g.edges) {
    if (!snap[u] || st.informed[v]) continue;
    if (rng.bernoulli(p)) {
      st.informed[v] = 1;
      ++st.count;
    }
  }
  ++st.round;
}

HittingTimes run_hitting_times(const TopologyGraph& g, double p, int source, int64_t budget,
                               Rng& rng) {
  PropagationState st = propagation_start(g, source);
  HittingTimes ht;
  ht.t.assign(g.mu, HittingTimes::kUnattained);
  ht.t[0] = 0;
  int reached = 1;
  while (st.count < g.mu && st.round < budget) {
    propagate_step(st, g, p, rng);
    while (reached < st.count) ht.t[reached++] = st.round;
  }
  return ht;
}

}  // namespace pea
