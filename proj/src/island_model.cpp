#include "pea/island_model.hpp"

#include <algorithm>
#include <cmath>

namespace pea {

namespace {
// substream tags (arbitrary distinct constants)
constexpr uint64_t kTagInit = 0x11;
constexpr uint64_t kTagMutate = 0x22;
constexpr uint64_t kTagSelect = 0x33;
constexpr uint64_t kTagEdge = 0x44;
}  // namespace

MutationSampler::MutationSampler(int n) : n_(n), cdf_(n + 1) {
  if (n < 1) fail(Err::InvalidSize, "mutation needs n >= 1");
  if (n == 1) {
    cdf_[0] = 0.0;  // the single bit always flips
    cdf_[1] = 1.0;
    return;
  }
  double q = 1.0 / n;
  double pmf = std::pow(1.0 - q, n);  // count = 0
  double acc = pmf;
  cdf_[0] = acc;
  for (int c = 0; c < n; ++c) {
    pmf *= static_cast<double>(n - c) / (static_cast<double>(c + 1) * (n - 1));
    acc += pmf;
    cdf_[c + 1] = acc;
  }
  cdf_[n] = 1.0;
}

void MutationSampler::apply(BitString& x, Rng& rng, std::vector<int>& flipped) const {
  flipped.clear();
  double u = rng.u01();
  int count = 0;
  while (count < n_ && u > cdf_[count]) ++count;
  if (count == 0) return;
  if (count == 1) {
    int pos = static_cast<int>(rng.below(n_));
    flipped.push_back(pos);
    x.flip(pos);
    return;
  }
  while (static_cast<int>(flipped.size()) < count) {
    int pos = static_cast<int>(rng.below(n_));
    if (std::find(flipped.begin(), flipped.end(), pos) == flipped.end()) {
      flipped.push_back(pos);
      x.flip(pos);
    }
  }
}

BitString standard_bit_mutation(const BitString& x, Rng& rng) {
  MutationSampler sampler(x.size());
  BitString y = x;
  std::vector<int> scratch;
  sampler.apply(y, rng, scratch);
  return y;
}

namespace {

template <typename Observer>
RunOutcome run_impl(const ModelConfig& cfg, const Observer& observe, bool traced) {
  const Objective& obj = cfg.objective;
  const TopologyGraph& g = cfg.topology;
  const int mu = g.mu;
  const int n = obj.n;
  if (mu < 1) fail(Err::InvalidSize, "model needs mu >= 1");
  if (cfg.p < 0.0 || cfg.p > 1.0) fail(Err::DomainError, "migration probability outside [0,1]");
  if (cfg.tau < 1) fail(Err::DomainError, "tau must be >= 1");
  if (cfg.fixed_start && cfg.fixed_start->size() != n)
    fail(Err::LengthMismatch, "fixed start length does not match objective n");

  const int64_t opt = optimum_value(obj);
  MutationSampler sampler(n);

  std::vector<Rng> mut_rng, sel_rng;
  mut_rng.reserve(mu);
  sel_rng.reserve(mu);
  for (int i = 0; i < mu; ++i) {
    mut_rng.emplace_back(split(cfg.seed, kTagMutate, i));
    sel_rng.emplace_back(split(cfg.seed, kTagSelect, i));
  }

  std::vector<BitString> cur(mu);
  std::vector<int64_t> fit(mu);
  for (int i = 0; i < mu; ++i) {
    if (cfg.fixed_start) {
      cur[i] = *cfg.fixed_start;
    } else {
      Rng init(split(cfg.seed, kTagInit, i));
      cur[i] = BitString::random(n, init);
    }
    fit[i] = evaluate(obj, cur[i]);
  }

  RunOutcome out;
  out.best_fitness = *std::max_element(fit.begin(), fit.end());
  if (out.best_fitness == opt) {
    out.success = true;
    return out;  // an initial individual is already optimal; nothing was spent
  }

  const bool migrating = cfg.p > 0.0 && !g.edges.empty();
  std::vector<BitString> snap;
  std::vector<int64_t> snap_fit;
  std::vector<int64_t> in_best(mu);
  std::vector<int> in_src(mu), in_ties(mu);
  std::vector<int> flipped;
  flipped.reserve(8);

  for (int64_t gen = 1; gen <= cfg.budget; ++gen) {
    // phase 1: mutate, accept iff not worse
    for (int i = 0; i < mu; ++i) {
      sampler.apply(cur[i], mut_rng[i], flipped);
      int64_t nf = evaluate(obj, cur[i]);
      if (nf >= fit[i]) {
        fit[i] = nf;
      } else {
        for (int pos : flipped) cur[i].flip(pos);
      }
    }

    // phases 2+3: migration over a frozen snapshot
    if (migrating && gen % cfg.tau == 0) {
      snap = cur;
      snap_fit = fit;
      std::fill(in_src.begin(), in_src.end(), -1);
      for (size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        uint64_t h = split(cfg.seed, kTagEdge, static_cast<uint64_t>(gen), e);
        if ((h >> 11) * 0x1.0p-53 >= cfg.p) continue;
        ++out.t_com;  // the copy is sent regardless of later acceptance
        if (in_src[v] < 0 || snap_fit[u] > in_best[v]) {
          in_best[v] = snap_fit[u];
          in_src[v] = u;
          in_ties[v] = 1;
        } else if (snap_fit[u] == in_best[v]) {
          // uniform choice among max-fitness incoming copies
          ++in_ties[v];
          if (sel_rng[v].below(in_ties[v]) == 0) in_src[v] = u;
        }
      }
      for (int v = 0; v < mu; ++v)
        if (in_src[v] >= 0 && in_best[v] >= fit[v]) {
          cur[v] = snap[in_src[v]];
          fit[v] = in_best[v];
        }
    }

    int64_t gen_best = *std::max_element(fit.begin(), fit.end());
    out.best_fitness = std::max(out.best_fitness, gen_best);
    if (traced) observe(GenerationView{gen, &cur, &fit});
    if (gen_best == opt) {
      out.success = true;
      out.t_par = gen;
      break;
    }
    if (gen == cfg.budget) out.t_par = gen;  // budget exhausted
  }

  out.t_seq = static_cast<int64_t>(mu) * out.t_par;
  return out;
}

}  // namespace

RunOutcome run_model(const ModelConfig& cfg) {
  return run_impl(cfg, [](const GenerationView&) {}, false);
}

RunOutcome run_model_traced(const ModelConfig& cfg, const StepObserver& observe) {
  if (!observe) return run_model(cfg);
  return run_impl(cfg, observe, true);
}

}  // namespace pea
