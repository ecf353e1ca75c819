#include "pea/oracle.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace pea {

namespace {

// exact Binomial(n, 1/n) point mass on flipping a given set of d bits
std::vector<double> flip_weights(int n) {
  double q = 1.0 / n;
  std::vector<double> pw(n + 1);
  for (int d = 0; d <= n; ++d)
    pw[d] = std::pow(q, d) * std::pow(1.0 - q, n - d);
  return pw;
}

// mutation followed by elitist acceptance for one island, over all 2^n genomes
Eigen::MatrixXd island_kernel(int n, const std::vector<int64_t>& fit_of) {
  uint64_t gs = uint64_t{1} << n;
  std::vector<double> pw = flip_weights(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(gs, gs);
  for (uint64_t x = 0; x < gs; ++x) {
    for (uint64_t off = 0; off < gs; ++off) {
      double pr = pw[std::popcount(x ^ off)];
      uint64_t kept = fit_of[off] >= fit_of[x] ? off : x;
      m(x, kept) += pr;
    }
  }
  return m;
}

void check_stochastic(const Eigen::MatrixXd& k, const char* what) {
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    double sum = k.row(r).sum();
    if (!(std::abs(sum - 1.0) <= 1e-9))
      fail(Err::SingularSystem,
           std::string(what) + " kernel row does not sum to 1");
  }
}

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void ensure_solved(ChainModel& c) {
  if (c.solved) return;
  uint64_t s_count = c.num_states;
  std::vector<int64_t> tidx(s_count, -1);
  std::vector<uint64_t> trans;
  for (uint64_t s = 0; s < s_count; ++s) {
    if (!c.absorbing[s]) {
      tidx[s] = static_cast<int64_t>(trans.size());
      trans.push_back(s);
    }
  }
  c.hit.assign(s_count, 0.0);
  int64_t n_trans = static_cast<int64_t>(trans.size());
  if (n_trans == 0) {
    c.solved = true;
    return;
  }

  // One unknown per (phase, transient state), phase = completed generations
  // mod tau. The generation taken from phase r is generation r+1 (mod tau),
  // so it includes migration iff (r+1) % tau == 0, and lands in phase r+1.
  int64_t tau = c.tau;
  int64_t dim = n_trans * tau;
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(dim);
  for (int64_t r = 0; r < tau; ++r) {
    const Eigen::MatrixXd& k = ((r + 1) % tau == 0) ? c.migrating : c.plain;
    int64_t row0 = r * n_trans;
    int64_t col0 = ((r + 1) % tau) * n_trans;
    for (int64_t i = 0; i < n_trans; ++i) {
      sys(row0 + i, row0 + i) += 1.0;
      for (int64_t j = 0; j < n_trans; ++j)
        sys(row0 + i, col0 + j) -=
            k(static_cast<Eigen::Index>(trans[i]),
              static_cast<Eigen::Index>(trans[j]));
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);
  Eigen::VectorXd x = lu.solve(rhs);
  double resid = (sys * x - rhs).lpNorm<Eigen::Infinity>();
  if (!x.allFinite() || !(resid <= 1e-8))
    fail(Err::SingularSystem,
         "absorption system solve residual " + fmt_double(resid) +
             " exceeds 1e-8");
  for (int64_t i = 0; i < n_trans; ++i) c.hit[trans[i]] = x(i);  // phase 0
  c.solved = true;
}

}  // namespace

ChainModel build_chain(const ModelConfig& cfg, uint64_t max_states) {
  const Objective& f = cfg.objective;
  int n = f.n;
  int mu = cfg.topology.mu;
  if (n < 1) fail(Err::InvalidSize, "chain needs n >= 1");
  if (mu < 1) fail(Err::InvalidSize, "chain needs mu >= 1");
  if (cfg.tau < 1) fail(Err::DomainError, "tau must be >= 1");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0))
    fail(Err::DomainError, "migration probability must lie in [0, 1]");
  int bits = n * mu;
  if (bits > 62 || (uint64_t{1} << bits) > max_states)
    fail(Err::StateSpaceTooLarge,
         "2^(n*mu) = 2^" + std::to_string(bits) + " joint states exceed cap " +
             std::to_string(max_states));

  ChainModel c;
  c.n = n;
  c.mu = mu;
  c.tau = cfg.tau;
  c.objective = f;
  uint64_t gs = uint64_t{1} << n;          // genomes per island
  uint64_t s_count = uint64_t{1} << bits;  // joint states
  c.num_states = s_count;
  uint64_t gmask = gs - 1;

  std::vector<int64_t> fit_of(gs);
  for (uint64_t g = 0; g < gs; ++g) {
    BitString x(n);
    for (int i = 0; i < n; ++i)
      if ((g >> i) & 1) x.set(i, true);
    fit_of[g] = evaluate(f, x);
  }
  int64_t opt = optimum_value(f);

  c.absorbing.assign(s_count, 0);
  for (uint64_t s = 0; s < s_count; ++s) {
    for (int v = 0; v < mu; ++v) {
      if (fit_of[(s >> (n * v)) & gmask] == opt) {
        c.absorbing[s] = 1;
        break;
      }
    }
  }

  Eigen::MatrixXd m = island_kernel(n, fit_of);

  // joint mutation kernel: per-row Kronecker product of the island rows
  c.plain.resize(s_count, s_count);
  std::vector<double> row(s_count), nxt(s_count);
  for (uint64_t s = 0; s < s_count; ++s) {
    uint64_t sz = 1;
    row[0] = 1.0;
    for (int v = 0; v < mu; ++v) {
      uint64_t xv = (s >> (n * v)) & gmask;
      for (uint64_t y = 0; y < gs; ++y) {
        double w = m(xv, y);
        for (uint64_t i = 0; i < sz; ++i) nxt[(y << (n * v)) | i] = w * row[i];
      }
      std::swap(row, nxt);
      sz *= gs;
    }
    for (uint64_t u = 0; u < s_count; ++u) c.plain(s, u) = row[u];
  }
  check_stochastic(c.plain, "mutation");

  bool migrates = cfg.p > 0.0 && !cfg.topology.edges.empty();
  if (!migrates) {
    c.migrating = c.plain;
    return c;
  }

  std::vector<std::vector<int>> in(mu);
  for (const auto& [u, v] : cfg.topology.edges) in[v].push_back(u);

  // Migration kernel: per target island, enumerate which in-edges fired
  // (each independently with probability p), give the island a maximum-
  // fitness copy among them (ties uniform over copies), accepted iff its
  // fitness is >= the island's own. Islands read a common snapshot, so the
  // joint kernel is the product of the per-island distributions.
  Eigen::MatrixXd mig = Eigen::MatrixXd::Zero(s_count, s_count);
  std::vector<double> dv(gs);
  for (uint64_t s = 0; s < s_count; ++s) {
    uint64_t sz = 1;
    row[0] = 1.0;
    for (int v = 0; v < mu; ++v) {
      uint64_t xv = (s >> (n * v)) & gmask;
      std::fill(dv.begin(), dv.end(), 0.0);
      size_t deg = in[v].size();
      for (uint64_t mask = 0; mask < (uint64_t{1} << deg); ++mask) {
        int fired = std::popcount(mask);
        double pr = std::pow(cfg.p, fired) *
                    std::pow(1.0 - cfg.p, static_cast<int>(deg) - fired);
        if (pr == 0.0) continue;
        if (mask == 0) {
          dv[xv] += pr;
          continue;
        }
        int64_t best = std::numeric_limits<int64_t>::min();
        int cnt = 0;
        for (size_t j = 0; j < deg; ++j) {
          if (!((mask >> j) & 1)) continue;
          int64_t fj = fit_of[(s >> (n * in[v][j])) & gmask];
          if (fj > best) {
            best = fj;
            cnt = 1;
          } else if (fj == best) {
            ++cnt;
          }
        }
        if (best < fit_of[xv]) {
          dv[xv] += pr;
          continue;
        }
        for (size_t j = 0; j < deg; ++j) {
          if (!((mask >> j) & 1)) continue;
          uint64_t gj = (s >> (n * in[v][j])) & gmask;
          if (fit_of[gj] == best) dv[gj] += pr / cnt;
        }
      }
      for (uint64_t y = 0; y < gs; ++y) {
        double w = dv[y];
        for (uint64_t i = 0; i < sz; ++i) nxt[(y << (n * v)) | i] = w * row[i];
      }
      std::swap(row, nxt);
      sz *= gs;
    }
    for (uint64_t u = 0; u < s_count; ++u) mig(s, u) = row[u];
  }
  check_stochastic(mig, "migration");

  c.migrating = c.plain * mig;
  check_stochastic(c.migrating, "combined");
  return c;
}

uint64_t encode_state(const std::vector<BitString>& genomes) {
  if (genomes.empty()) fail(Err::InvalidSize, "no genomes to encode");
  int n = genomes[0].size();
  if (n * static_cast<int>(genomes.size()) > 62)
    fail(Err::StateSpaceTooLarge, "joint state exceeds 62 bits");
  uint64_t s = 0;
  for (size_t v = 0; v < genomes.size(); ++v) {
    if (genomes[v].size() != n)
      fail(Err::LengthMismatch, "genomes differ in length");
    s |= genomes[v].as_bits() << (n * v);
  }
  return s;
}

double expected_absorption_time(ChainModel& chain, uint64_t start_state) {
  if (start_state >= chain.num_states)
    fail(Err::IndexOutOfRange, "start state out of range");
  ensure_solved(chain);
  return chain.hit[start_state];
}

double expected_absorption_time_uniform(ChainModel& chain) {
  ensure_solved(chain);
  double total = 0.0;
  for (double h : chain.hit) total += h;
  return total / static_cast<double>(chain.num_states);
}

double OracleCache::expected_time(const ModelConfig& cfg) {
  std::ostringstream key;
  key << cfg.objective.name << "|n=" << cfg.objective.n << "|"
      << topo_name(cfg.topology.kind) << "|" << cfg.topology.params
      << "|mu=" << cfg.topology.mu << "|p=" << fmt_double(cfg.p)
      << "|tau=" << cfg.tau << "|start=";
  if (cfg.fixed_start)
    key << cfg.fixed_start->str();
  else
    key << "uniform";
  auto it = memo_.find(key.str());
  if (it != memo_.end()) return it->second;

  ChainModel chain = build_chain(cfg);
  double value;
  if (cfg.fixed_start) {
    std::vector<BitString> genomes(cfg.topology.mu, *cfg.fixed_start);
    value = expected_absorption_time(chain, encode_state(genomes));
  } else {
    value = expected_absorption_time_uniform(chain);
  }
  memo_.emplace(key.str(), value);
  return value;
}

}  // namespace pea
