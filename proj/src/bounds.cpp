#include "pea/bounds.hpp"

#include <cmath>
#include <limits>

namespace pea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_levels(const LevelPartition& part) {
  if (part.m < 1 || static_cast<int>(part.s.size()) != part.m - 1)
    fail(Err::InvalidSize, "level partition is malformed");
  for (double si : part.s)
    if (!(si > 0.0)) fail(Err::ZeroSuccessProbability, "level success probability must be > 0");
}

void check_p(double p) {
  if (!(p >= 0.0) || p > 1.0) fail(Err::DomainError, "transmission probability outside [0,1]");
}

double log2_of(double x) { return std::log2(x); }

std::string echo(const LevelPartition& part, int mu, double p) {
  return "m=" + std::to_string(part.m) + ",mu=" + std::to_string(mu) + ",p=" + std::to_string(p);
}

// per-level costs; the ring one is valid for every strongly connected kind
double ring_level_cost(double s, int mu, double p) {
  if (p == 0.0) return kInf;
  return 2.0 / std::sqrt(p * s) + 1.0 / (mu * s);
}
double torus_level_cost(double s, int mu, double p) {
  if (p == 0.0) return kInf;
  return std::pow(3.0, 5.0 / 3.0) / (std::pow(p, 2.0 / 3.0) * std::cbrt(s)) + 1.0 / (mu * s);
}
double hypercube_level_cost(double s, int mu, double p) {
  if (p == 0.0) return kInf;
  return (49.0 + 24.0 * log2_of(1.0 / s)) / p + 1.0 / (mu * s);
}
double complete_level_cost(double s, int mu, double p) {
  if (p == 0.0) return kInf;
  return 1.0 + 2.0 / p + 2.0 / (mu * s);
}
double complete_refined_level_cost(double s, int mu, double p) {
  if (p == 0.0) return kInf;
  double spread = 8.0 * log2_of(static_cast<double>(mu));
  if (p < 1.0 / mu) spread /= p * mu;
  return 1.0 + spread + 1.0 / (mu * s);
}

}  // namespace

double seq_fitness_level_bound(const LevelPartition& part) {
  check_levels(part);
  double total = 0.0;
  for (double si : part.s) total += 1.0 / si;
  return total;
}

double general_parallel_bound(const std::vector<double>& s,
                              const std::function<double(int64_t)>& mu_seq, int64_t tau,
                              double eps) {
  if (tau < 1) fail(Err::DomainError, "tau must be >= 1");
  if (!(eps > 0.0)) fail(Err::DomainError, "eps must be > 0");
  if (!mu_seq) fail(Err::DomainError, "mu_seq must be callable");
  for (double si : s)
    if (!(si > 0.0)) fail(Err::NonConvergent, "series diverges for a level with s = 0");

  double total = 0.0;
  for (double si : s) {
    const double base = 1.0 - si;
    // groups of tau generations share one exponent; group j covers
    // generations j*tau+1 .. (j+1)*tau and sees exponent tau * S_j with
    // S_j = sum_{l=1..j} mu_seq((l-1)*tau + 1)
    double exp_sum = 0.0;  // S_j
    double inner = 0.0;    // sum of group terms (1-s)^(tau*S_j)
    double term = 1.0;     // j = 0 contributes (1-s)^0
    int64_t j = 0;
    while (term >= eps) {
      inner += term;
      double v = mu_seq(j * tau + 1);
      if (!(v >= 1.0)) fail(Err::DomainError, "mu_seq values must be >= 1");
      exp_sum += v;
      ++j;
      term = std::pow(base, static_cast<double>(tau) * exp_sum);
    }
    // geometric tail: later groups shrink at least by (1-s)^(tau*mu_current)
    double ratio = std::pow(base, static_cast<double>(tau) * mu_seq((j - 1) * tau + 1));
    if (ratio < 1.0) inner += term * ratio / (1.0 - ratio) + term;
    total += static_cast<double>(tau) * inner;
  }
  return total;
}

double level_time_bound(double e_tk, double k, double s) {
  if (!(e_tk >= 0.0)) fail(Err::DomainError, "expected hitting time must be >= 0");
  if (!(k >= 1.0)) fail(Err::DomainError, "informed-count k must be >= 1");
  if (!(s > 0.0)) fail(Err::ZeroSuccessProbability, "level success probability must be > 0");
  return e_tk + 1.0 + 1.0 / (k * s);
}

BoundReport topology_bound(Topo kind, const LevelPartition& part, int mu, double p) {
  check_levels(part);
  check_p(p);
  if (mu < 1) fail(Err::InvalidSize, "mu must be >= 1");

  BoundReport rep;
  rep.inputs = echo(part, mu, p);
  double inv_sum = 0.0;  // sum 1/s_i
  for (double si : part.s) inv_sum += 1.0 / si;

  switch (kind) {
    case Topo::UniRing:
    case Topo::BiRing: {
      rep.source = "ring";
      double first = 0.0;
      for (double si : part.s) first += 1.0 / std::sqrt(si);
      rep.value = p == 0.0 ? kInf : 2.0 / std::sqrt(p) * first + inv_sum / mu;
      break;
    }
    case Topo::Torus: {
      rep.source = "torus";
      double first = 0.0;
      for (double si : part.s) first += 1.0 / std::cbrt(si);
      rep.value =
          p == 0.0 ? kInf : std::pow(3.0, 5.0 / 3.0) / std::pow(p, 2.0 / 3.0) * first + inv_sum / mu;
      break;
    }
    case Topo::Hypercube: {
      rep.source = "hypercube";
      rep.log_base = "log2";
      double logs = 0.0;
      for (double si : part.s) logs += log2_of(1.0 / si);
      rep.value = p == 0.0 ? kInf : (49.0 * part.m + 24.0 * logs) / p + inv_sum / mu;
      break;
    }
    case Topo::Complete: {
      rep.source = "complete";
      rep.value = p == 0.0 ? kInf : part.m + 2.0 * part.m / p + 2.0 * inv_sum / mu;
      break;
    }
    default:
      fail(Err::UnsupportedKind, "no closed-form bound for this kind");
  }
  return rep;
}

BoundReport complete_refined_bound(const LevelPartition& part, int mu, double p) {
  check_levels(part);
  check_p(p);
  if (mu < 2) fail(Err::InvalidSize, "refined complete bound needs mu >= 2");

  double inv_sum = 0.0;
  for (double si : part.s) inv_sum += 1.0 / si;

  BoundReport rep;
  rep.source = "complete-refined";
  rep.log_base = "log2";
  rep.inputs = echo(part, mu, p);
  if (p == 0.0) {
    rep.value = kInf;
    return rep;
  }
  double spread = 8.0 * part.m * log2_of(static_cast<double>(mu));
  if (p < 1.0 / mu) spread /= p * mu;
  rep.value = part.m + spread + inv_sum / mu;
  return rep;
}

BoundReport propagation_time_bound(PropModel model, const PropagationInputs& in) {
  check_p(in.p);
  BoundReport rep;
  switch (model) {
    case PropModel::GeneralGrowth: {
      if (!(in.c > 1.0)) fail(Err::DomainError, "restart constant c must be > 1");
      if (!(in.k >= 0.0) || !(in.s_k >= 1.0))
        fail(Err::DomainError, "need k >= 0 and target count s_k >= 1");
      rep.source = "prop-general";
      rep.log_base = "ln";
      rep.inputs = "c=" + std::to_string(in.c) + ",k=" + std::to_string(in.k) +
                   ",s_k=" + std::to_string(in.s_k) + ",p=" + std::to_string(in.p);
      double numer = in.c / (in.c - 1.0) * std::max(4.0 * in.k, 8.0 * std::log(in.c * in.s_k));
      rep.value = in.p == 0.0 ? kInf : numer / in.p;
      break;
    }
    case PropModel::CompleteGraph: {
      if (in.mu < 1) fail(Err::InvalidSize, "mu must be >= 1");
      rep.source = "prop-complete";
      rep.log_base = "log2";
      rep.inputs = "mu=" + std::to_string(in.mu) + ",p=" + std::to_string(in.p);
      double denom = std::min(in.p * in.mu, 1.0);
      rep.value = denom == 0.0 ? kInf : 8.0 * log2_of(static_cast<double>(in.mu)) / denom;
      break;
    }
    case PropModel::UndirectedDiameter: {
      if (in.diam < 0 || in.n_vertices < 1) fail(Err::DomainError, "need diam >= 0 and n >= 1");
      rep.source = "prop-undirected";
      rep.log_base = "log2";
      rep.inputs = "diam=" + std::to_string(in.diam) + ",n=" + std::to_string(in.n_vertices) +
                   ",p=" + std::to_string(in.p);
      double numer = 8.0 * in.diam + 8.0 * log2_of(static_cast<double>(in.n_vertices));
      rep.value = in.p == 0.0 ? kInf : numer / (in.p * (1.0 - std::exp(-1.0)));
      break;
    }
  }
  return rep;
}

double communication_factor(Topo kind, int mu, double p) {
  check_p(p);
  if (mu < 1) fail(Err::InvalidSize, "mu must be >= 1");
  double m = static_cast<double>(mu);
  switch (kind) {
    case Topo::UniRing:
    case Topo::BiRing: return 2.0 * p * m;
    case Topo::Torus: return 4.0 * p * m;
    case Topo::Hypercube: return p * m * log2_of(m);
    case Topo::Complete: return p * m * m;
  }
  fail(Err::UnsupportedKind, "bad topology enum");
}

BoundReport best_bound(const LevelPartition& part, Topo kind, int mu, double p) {
  check_levels(part);
  check_p(p);
  if (mu < 1) fail(Err::InvalidSize, "mu must be >= 1");

  BoundReport rep;
  rep.source = "best-per-level";
  rep.inputs = echo(part, mu, p);
  if (kind == Topo::Hypercube || kind == Topo::Complete) rep.log_base = "log2";

  double total = 0.0;
  for (double si : part.s) {
    double best = 1.0 / si;  // trivial single-island cost
    best = std::min(best, ring_level_cost(si, mu, p));
    switch (kind) {
      case Topo::Torus:
        best = std::min(best, torus_level_cost(si, mu, p));
        break;
      case Topo::Hypercube:
        best = std::min(best, hypercube_level_cost(si, mu, p));
        break;
      case Topo::Complete:
        best = std::min(best, complete_level_cost(si, mu, p));
        if (mu >= 2) best = std::min(best, complete_refined_level_cost(si, mu, p));
        break;
      default:
        break;
    }
    total += best;
  }
  rep.value = total;
  return rep;
}

}  // namespace pea
