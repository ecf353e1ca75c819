#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pea/bounds.hpp"
#include "pea/island_model.hpp"
#include "pea/replicate.hpp"

namespace pea {

// spelled objective names: onemax | lo | jump:<k>
Objective make_objective(const std::string& name, int n);

// spelled topology names: uniring | biring | torus[:WxH] | hypercube | complete
struct TopoSpec {
  Topo kind = Topo::Complete;
  std::optional<std::pair<int, int>> dims;  // explicit torus shape
};
TopoSpec parse_topo_spec(const std::string& name);

// Instantiates the spec for a concrete island count. Returns empty when the
// kind admits no graph with mu islands (hypercube needs a power of two,
// torus needs a w x h >= 3x3 factorization or explicit matching dims);
// sweeps skip such points, single runs report them as config errors.
std::optional<TopologyGraph> realize_topology(const TopoSpec& spec, int mu);

struct SweepSpec {
  std::vector<std::string> functions;
  std::vector<int> ns;
  std::vector<std::string> topologies;
  std::vector<int> mus;
  std::vector<double> ps;
  std::vector<int64_t> taus{1};
  int64_t reps = 1;
  uint64_t base_seed = 1;
  int64_t budget = 100'000'000;
  std::optional<std::string> fixed_start;  // bit literal, applied at every n
  Engine engine = Engine::OpenMP;
  int threads = 0;
};

struct RunRecord {
  std::string function;
  int n = 0;
  int mu = 0;
  std::string topology;
  std::string topo_params;
  double p = 0.0;
  int64_t tau = 1;
  int64_t rep = 0;
  uint64_t seed = 0;
  int64_t t_par = 0;
  int64_t t_seq = 0;
  int64_t t_com = 0;
  bool success = false;
  int64_t best_fitness = 0;
};

struct Stats {
  double mean = 0.0;
  double sd = 0.0;    // sample (n-1) standard deviation, 0 for a single value
  double ci95 = 0.0;  // 1.96  * sd / sqrt(reps)
  double ci99 = 0.0;  // 2.576 * sd / sqrt(reps)
};

Stats summarize(const std::vector<double>& values);

struct SummaryRow {
  std::string function;
  int n = 0;
  int mu = 0;
  std::string topology;
  std::string topo_params;
  double p = 0.0;
  int64_t tau = 1;
  int64_t reps = 0;
  Stats t_par, t_seq, t_com;
  double success_rate = 0.0;
  std::optional<double> speedup;
  std::optional<double> efficiency;
  std::optional<double> bound;
  std::string bound_source;
  std::optional<double> bound_t_com;
  std::optional<bool> violation;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;        // point-major, replication order within
  std::vector<SummaryRow> summary;    // one row per executed sweep point
  int64_t points_enumerated = 0;      // including skipped shapes
  int64_t points_executed = 0;
};

// Enumerates the full cross product functions x ns x topologies x mus x ps x
// taus in that nesting order. Every enumerated point advances the point
// index used for seed derivation, including points skipped because the
// topology kind cannot be realized for that mu -- so adding or removing an
// unrelated axis value never changes another point's seeds.
ExperimentResult run_experiment(const SweepSpec& spec);

uint64_t rep_seed(uint64_t base_seed, int64_t point_index, int64_t rep_index);

// speedup = baseline / mean_t_par, efficiency = speedup / mu;
// MissingBaseline unless baseline and mean are positive finite values
std::pair<double, double> speedup_efficiency(double baseline_mean_t_par,
                                             double mean_t_par, int mu);

// Fills speedup/efficiency from the mu=1 row with the same
// (function, n, topology kind, p, tau); rows without one are left empty.
void attach_speedup(std::vector<SummaryRow>& rows);

// Fills bound / bound_source / bound_t_com / violation on every row
// (violation iff mean_t_par - ci99 > bound); returns the violation count.
int attach_bounds(std::vector<SummaryRow>& rows);

void write_runs_csv(const std::string& path, const std::vector<RunRecord>& runs);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);
void write_long_csv(const std::string& path,
                    const std::vector<SummaryRow>& rows);

// fig1-desk | fig2-desk | fig1-paper
SweepSpec preset_spec(const std::string& name);

}  // namespace pea
