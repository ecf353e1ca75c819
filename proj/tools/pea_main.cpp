#include <cmath>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "pea/config_file.hpp"
#include "pea/csv.hpp"
#include "pea/experiment.hpp"
#include "pea/oracle.hpp"
#include "pea/propagation.hpp"

namespace fs = std::filesystem;
using namespace pea;

namespace {

// string-typed sweep options so every axis accepts a comma-separated list;
// config-file values fill any option the command line left untouched
struct SweepCli {
  std::string functions = "onemax";
  std::string ns = "16";
  std::string topologies = "complete";
  std::string mus = "1";
  std::string ps = "0";
  std::string taus = "1";
  std::string reps = "1";
  std::string seed = "1";
  std::string budget = "100000000";
  std::string fixed_start;
  std::string out = ".";
  std::string config;
  int threads = 0;
  bool serial = false;
};

void add_sweep_options(CLI::App* cmd, SweepCli& o) {
  cmd->add_option("--function", o.functions,
                  "objective(s): onemax | lo | jump:<k>");
  cmd->add_option("--n", o.ns, "problem size(s)");
  cmd->add_option("--topology", o.topologies,
                  "uniring | biring | torus[:WxH] | hypercube | complete");
  cmd->add_option("--mu", o.mus, "island count(s)");
  cmd->add_option("--p", o.ps, "migration probability value(s)");
  cmd->add_option("--tau", o.taus, "migration interval(s)");
  cmd->add_option("--reps", o.reps, "replications per sweep point");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--budget", o.budget, "generation cap per run");
  cmd->add_option("--fixed-start", o.fixed_start,
                  "bit literal placed on every island");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--config", o.config,
                  "key=value file; command-line flags override it");
  cmd->add_option("--threads", o.threads, "replication worker threads");
  cmd->add_flag("--serial", o.serial, "run replications serially");
}

// command line wins over config file, config file wins over defaults
void merge_config(CLI::App* cmd, SweepCli& o) {
  if (o.config.empty()) return;
  ConfigMap file = load_config(o.config);
  auto take = [&](const char* flag, const char* key, std::string& slot) {
    if (cmd->count(flag) == 0 && file.has(key)) slot = file.get(key);
  };
  take("--function", "function", o.functions);
  take("--n", "n", o.ns);
  take("--topology", "topology", o.topologies);
  take("--mu", "mu", o.mus);
  take("--p", "p", o.ps);
  take("--tau", "tau", o.taus);
  take("--reps", "reps", o.reps);
  take("--seed", "seed", o.seed);
  take("--budget", "budget", o.budget);
  take("--fixed-start", "fixed_start", o.fixed_start);
  take("--out", "out", o.out);
}

SweepSpec to_spec(const SweepCli& o, bool single_point) {
  SweepSpec s;
  s.functions = split_list(o.functions);
  for (const auto& v : split_list(o.ns))
    s.ns.push_back(static_cast<int>(parse_i64(v, "n")));
  s.topologies = split_list(o.topologies);
  for (const auto& v : split_list(o.mus))
    s.mus.push_back(static_cast<int>(parse_i64(v, "mu")));
  s.ps.clear();
  for (const auto& v : split_list(o.ps)) s.ps.push_back(parse_f64(v, "p"));
  s.taus.clear();
  for (const auto& v : split_list(o.taus))
    s.taus.push_back(parse_i64(v, "tau"));
  s.reps = parse_i64(o.reps, "reps");
  s.base_seed = parse_u64(o.seed, "seed");
  s.budget = parse_i64(o.budget, "budget");
  if (!o.fixed_start.empty()) s.fixed_start = o.fixed_start;
  s.engine = o.serial ? Engine::Serial : Engine::OpenMP;
  s.threads = o.threads;
  if (single_point) {
    auto need_one = [](size_t count, const char* what) {
      if (count != 1)
        fail(Err::BadConfig,
             std::string("run takes exactly one value for ") + what);
    };
    need_one(s.functions.size(), "--function");
    need_one(s.ns.size(), "--n");
    need_one(s.topologies.size(), "--topology");
    need_one(s.mus.size(), "--mu");
    need_one(s.ps.size(), "--p");
    need_one(s.taus.size(), "--tau");
  }
  return s;
}

int write_experiment(const SweepSpec& spec, const std::string& out_dir,
                     bool audit) {
  ExperimentResult res = run_experiment(spec);
  fs::create_directories(out_dir);
  write_runs_csv((fs::path(out_dir) / "runs.csv").string(), res.runs);
  write_summary_csv((fs::path(out_dir) / "summary.csv").string(), res.summary);
  write_long_csv((fs::path(out_dir) / "long.csv").string(), res.summary);
  int violations = 0;
  for (const auto& row : res.summary) {
    if (row.violation && *row.violation) {
      ++violations;
      std::cerr << "bound violation: " << row.function << " n=" << row.n
                << " mu=" << row.mu << " " << row.topology << ":"
                << row.topo_params << " p=" << csv_double(row.p)
                << " tau=" << row.tau << "  mean t_par "
                << csv_double(row.t_par.mean) << " - ci99 "
                << csv_double(row.t_par.ci99) << " > bound "
                << csv_double(*row.bound) << " (" << row.bound_source << ")\n";
    }
  }
  std::cout << "points " << res.points_executed << "/" << res.points_enumerated
            << ", runs " << res.runs.size() << ", violations " << violations
            << ", output " << out_dir << "\n";
  if (audit && violations > 0) return 2;
  return 0;
}

struct PointCli {
  std::string function = "onemax";
  int n = 16;
  std::string topology = "complete";
  int mu = 1;
  double p = 0.0;
  int64_t tau = 1;
};

void add_point_options(CLI::App* cmd, PointCli& o) {
  cmd->add_option("--function", o.function, "onemax | lo | jump:<k>");
  cmd->add_option("--n", o.n, "problem size");
  cmd->add_option("--topology", o.topology,
                  "uniring | biring | torus[:WxH] | hypercube | complete");
  cmd->add_option("--mu", o.mu, "island count");
  cmd->add_option("--p", o.p, "migration probability");
  cmd->add_option("--tau", o.tau, "migration interval");
}

TopologyGraph must_realize(const std::string& topology, int mu) {
  auto g = realize_topology(parse_topo_spec(topology), mu);
  if (!g)
    fail(Err::BadConfig, topology + " cannot be built with mu=" +
                             std::to_string(mu) + " islands");
  return *g;
}

int cmd_bounds(const PointCli& o, const std::string& out,
               bool show_inputs) {
  Objective obj = make_objective(o.function, o.n);
  LevelPartition part = canonical_partition(obj);
  TopologyGraph g = must_realize(o.topology, o.mu);

  std::vector<BoundReport> reports;
  BoundReport seq;
  seq.value = seq_fitness_level_bound(part);
  seq.source = "sequential";
  seq.inputs = "m=" + std::to_string(part.m);
  reports.push_back(seq);
  reports.push_back(topology_bound(g.kind, part, o.mu, o.p));
  if (g.kind == Topo::Complete && o.mu >= 2)
    reports.push_back(complete_refined_bound(part, o.mu, o.p));
  BoundReport best = best_bound(part, g.kind, o.mu, o.p);
  reports.push_back(best);

  if (o.p > 0.0 && o.mu >= 2 && strongly_connected(g)) {
    int diam = topology_diameter(g);
    PropagationInputs pin;
    pin.p = o.p;
    pin.c = 2.0;
    pin.k = diam;
    pin.s_k = o.mu;
    pin.mu = o.mu;
    pin.diam = diam;
    pin.n_vertices = o.mu;
    reports.push_back(propagation_time_bound(PropModel::GeneralGrowth, pin));
    if (g.kind == Topo::Complete)
      reports.push_back(propagation_time_bound(PropModel::CompleteGraph, pin));
    if (edge_symmetric(g))
      reports.push_back(
          propagation_time_bound(PropModel::UndirectedDiameter, pin));
  }

  double factor = communication_factor(g.kind, o.mu, o.p);
  for (const auto& r : reports) {
    std::cout << r.source << " = " << csv_double(r.value);
    if (!r.log_base.empty()) std::cout << "  [logs: " << r.log_base << "]";
    if (show_inputs) std::cout << "  (" << r.inputs << ")";
    std::cout << "\n";
  }
  std::cout << "communication_factor = " << csv_double(factor)
            << ", bound_t_com = " << csv_double(factor * best.value) << "\n";

  if (!out.empty()) {
    CsvFile csv(out, {"bound", "value", "log_base", "inputs"});
    for (const auto& r : reports)
      csv.row({r.source, csv_double(r.value), r.log_base, r.inputs});
    csv.close();
  }
  return 0;
}

int cmd_propagate(const std::string& topology, int mu, double p, int64_t reps,
                  uint64_t seed, int64_t budget, const std::string& out) {
  if (reps < 1) fail(Err::BadConfig, "reps must be >= 1");
  TopologyGraph g = must_realize(topology, mu);

  std::vector<HittingTimes> all;
  all.reserve(static_cast<size_t>(reps));
  std::optional<CsvFile> csv;
  if (!out.empty())
    csv.emplace(out, std::vector<std::string>{"topology", "topo_params", "p",
                                              "rep", "seed", "k", "t_k"});
  double sum_full = 0.0;
  int64_t completed = 0;
  for (int64_t rep = 0; rep < reps; ++rep) {
    uint64_t s = split(seed, static_cast<uint64_t>(rep));
    Rng rng{s};
    HittingTimes ht = run_hitting_times(g, p, 0, budget, rng);
    if (ht.complete()) {
      sum_full += static_cast<double>(ht.t[static_cast<size_t>(g.mu) - 1]);
      ++completed;
    }
    if (csv) {
      for (int k = 1; k <= g.mu; ++k)
        csv->row({topo_name(g.kind), g.params, csv_double(p),
                  std::to_string(rep), std::to_string(s), std::to_string(k),
                  std::to_string(ht.t[static_cast<size_t>(k) - 1])});
    }
  }
  if (csv) csv->close();
  std::cout << "informed all " << g.mu << " islands in " << completed << "/"
            << reps << " replications";
  if (completed > 0)
    std::cout << ", mean rounds "
              << csv_double(sum_full / static_cast<double>(completed));
  std::cout << "\n";
  return 0;
}

int cmd_oracle(const PointCli& o, const std::string& fixed_start,
               uint64_t max_states, int64_t reps, uint64_t seed) {
  ModelConfig cfg;
  cfg.objective = make_objective(o.function, o.n);
  cfg.topology = must_realize(o.topology, o.mu);
  cfg.p = o.p;
  cfg.tau = o.tau;
  if (!fixed_start.empty()) cfg.fixed_start = BitString::parse(fixed_start);
  ChainModel chain = build_chain(cfg, max_states);
  double exact;
  if (cfg.fixed_start) {
    std::vector<BitString> genomes(cfg.topology.mu, *cfg.fixed_start);
    exact = expected_absorption_time(chain, encode_state(genomes));
  } else {
    exact = expected_absorption_time_uniform(chain);
  }
  std::cout << "exact expected t_par = " << csv_double(exact) << "  ("
            << chain.num_states << " states, tau=" << o.tau << ")\n";

  if (reps > 0) {
    cfg.budget = 100'000'000;
    std::vector<double> ts(static_cast<size_t>(reps));
    for (int64_t rep = 0; rep < reps; ++rep) {
      ModelConfig mine = cfg;
      mine.seed = split(seed, static_cast<uint64_t>(rep));
      ts[static_cast<size_t>(rep)] =
          static_cast<double>(run_model(mine).t_par);
    }
    Stats st = summarize(ts);
    double z999 = 3.2905;  // two-sided 99.9% normal quantile
    double half = z999 * st.sd / std::sqrt(static_cast<double>(reps));
    bool inside = std::abs(st.mean - exact) <= half;
    std::cout << "monte carlo mean = " << csv_double(st.mean) << " +- "
              << csv_double(half) << " (99.9% CLT, " << reps << " runs): "
              << (inside ? "consistent" : "OUTSIDE interval") << "\n";
    return inside ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"island-model evolutionary algorithm simulator and bound toolkit"};
  app.require_subcommand(1);

  SweepCli run_o, sweep_o, audit_o;
  CLI::App* run_cmd = app.add_subcommand("run", "replicate one configuration");
  add_sweep_options(run_cmd, run_o);
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a sweep over parameter axes");
  add_sweep_options(sweep_cmd, sweep_o);
  CLI::App* audit_cmd = app.add_subcommand(
      "audit", "run a sweep and fail (exit 2) on any bound violation");
  add_sweep_options(audit_cmd, audit_o);

  PointCli bounds_o;
  std::string bounds_out;
  bool bounds_inputs = false;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "evaluate the analytic bound formulas");
  add_point_options(bounds_cmd, bounds_o);
  bounds_cmd->add_option("--out", bounds_out, "also write the table as CSV");
  bounds_cmd->add_flag("--source", bounds_inputs,
                       "print the inputs each formula saw");

  std::string prop_topology = "complete";
  int prop_mu = 16;
  double prop_p = 1.0;
  int64_t prop_reps = 100;
  uint64_t prop_seed = 1;
  int64_t prop_budget = 10'000'000;
  std::string prop_out;
  CLI::App* prop_cmd = app.add_subcommand(
      "propagate", "simulate pure information spreading (no fitness)");
  prop_cmd->add_option("--topology", prop_topology, "topology kind");
  prop_cmd->add_option("--mu", prop_mu, "island count");
  prop_cmd->add_option("--p", prop_p, "per-edge transmission probability");
  prop_cmd->add_option("--reps", prop_reps, "replications");
  prop_cmd->add_option("--seed", prop_seed, "base seed");
  prop_cmd->add_option("--budget", prop_budget, "round cap");
  prop_cmd->add_option("--out", prop_out, "per-replication hitting-time CSV");

  PointCli oracle_o;
  std::string oracle_start;
  uint64_t oracle_max_states = 65536;
  int64_t oracle_reps = 0;
  uint64_t oracle_seed = 1;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "exact expected t_par by absorbing-chain solve");
  add_point_options(oracle_cmd, oracle_o);
  oracle_cmd->add_option("--fixed-start", oracle_start,
                         "bit literal placed on every island");
  oracle_cmd->add_option("--max-states", oracle_max_states,
                         "refuse instances with more joint states");
  oracle_cmd->add_option("--reps", oracle_reps,
                         "also cross-check with this many simulator runs");
  oracle_cmd->add_option("--seed", oracle_seed, "cross-check base seed");

  std::string preset_name;
  std::string preset_out = ".";
  int64_t preset_reps = 0;
  uint64_t preset_seed = 0;
  int preset_threads = 0;
  bool preset_serial = false;
  CLI::App* preset_cmd = app.add_subcommand(
      "preset", "run a canned experiment (fig1-desk | fig2-desk | fig1-paper)");
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  preset_cmd->add_option("--out", preset_out, "output directory");
  preset_cmd->add_option("--reps", preset_reps, "override replication count");
  preset_cmd->add_option("--seed", preset_seed, "override base seed");
  preset_cmd->add_option("--threads", preset_threads,
                         "replication worker threads");
  preset_cmd->add_flag("--serial", preset_serial, "run replications serially");

  try {
    app.parse(argc, argv);

    if (*run_cmd) {
      merge_config(run_cmd, run_o);
      return write_experiment(to_spec(run_o, true), run_o.out, false);
    }
    if (*sweep_cmd) {
      merge_config(sweep_cmd, sweep_o);
      return write_experiment(to_spec(sweep_o, false), sweep_o.out, false);
    }
    if (*audit_cmd) {
      merge_config(audit_cmd, audit_o);
      return write_experiment(to_spec(audit_o, false), audit_o.out, true);
    }
    if (*bounds_cmd) return cmd_bounds(bounds_o, bounds_out, bounds_inputs);
    if (*prop_cmd)
      return cmd_propagate(prop_topology, prop_mu, prop_p, prop_reps,
                           prop_seed, prop_budget, prop_out);
    if (*oracle_cmd)
      return cmd_oracle(oracle_o, oracle_start, oracle_max_states, oracle_reps,
                        oracle_seed);
    if (*preset_cmd) {
      SweepSpec spec = preset_spec(preset_name);
      if (preset_reps > 0) spec.reps = preset_reps;
      if (preset_seed != 0) spec.base_seed = preset_seed;
      spec.threads = preset_threads;
      spec.engine = preset_serial ? Engine::Serial : Engine::OpenMP;
      return write_experiment(spec, preset_out, false);
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
