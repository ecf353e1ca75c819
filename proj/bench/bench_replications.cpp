#include <chrono>
#include <cstdio>

#include "pea/experiment.hpp"

// Times the replication loop under both engines on the same workload and
// checks they produce identical outcomes (each replication seeds itself from
// its index, so scheduling order cannot matter).

using namespace pea;
using clock_type = std::chrono::steady_clock;

namespace {

struct Workload {
  const char* label;
  ModelConfig cfg;
  int64_t reps;
};

ModelConfig make_cfg(const std::string& fn, int n, const std::string& topo,
                     int mu, double p) {
  ModelConfig cfg;
  cfg.objective = make_objective(fn, n);
  cfg.topology = *realize_topology(parse_topo_spec(topo), mu);
  cfg.p = p;
  return cfg;
}

double run_engine(const Workload& w, Engine engine,
                  std::vector<int64_t>& t_pars) {
  auto one = [&](int64_t rep) {
    ModelConfig mine = w.cfg;
    mine.seed = rep_seed(42, 0, rep);
    return run_model(mine).t_par;
  };
  auto begin = clock_type::now();
  t_pars = run_replications<int64_t>(w.reps, engine, one);
  auto end = clock_type::now();
  return std::chrono::duration<double>(end - begin).count();
}

}  // namespace

int main() {
  Workload loads[] = {
      {"onemax n=64 mu=8 complete p=1", make_cfg("onemax", 64, "complete", 8, 1.0), 200},
      {"lo n=64 mu=8 complete p=1", make_cfg("lo", 64, "complete", 8, 1.0), 100},
      {"lo n=64 mu=16 uniring p=0.1", make_cfg("lo", 64, "uniring", 16, 0.1), 50},
  };

  std::printf("%-34s %6s %10s %10s %8s  %s\n", "workload", "reps", "serial_s",
              "openmp_s", "speedup", "match");
  bool all_match = true;
  for (const Workload& w : loads) {
    std::vector<int64_t> serial, parallel;
    double ts = run_engine(w, Engine::Serial, serial);
    double tp = run_engine(w, Engine::OpenMP, parallel);
    bool match = serial == parallel;
    all_match = all_match && match;
    std::printf("%-34s %6lld %10.3f %10.3f %7.2fx  %s\n", w.label,
                static_cast<long long>(w.reps), ts, tp, ts / tp,
                match ? "yes" : "NO");
  }
  if (!all_match) {
    std::printf("engines disagree\n");
    return 1;
  }
  return 0;
}
