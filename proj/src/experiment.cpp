#include "pea/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pea/csv.hpp"
#include "pea/config_file.hpp"

namespace pea {

Objective make_objective(const std::string& name, int n) {
  if (name == "onemax") return Objective::onemax(n);
  if (name == "lo") return Objective::leading_ones(n);
  if (name.rfind("jump:", 0) == 0) {
    int64_t k = parse_i64(name.substr(5), "jump gap width");
    if (k < 1 || k > n)
      fail(Err::BadConfig, "jump gap width must lie in [1, n]");
    return Objective::jump(static_cast<int>(k), n);
  }
  fail(Err::BadConfig, "unknown objective '" + name +
                           "' (expected onemax | lo | jump:<k>)");
}

TopoSpec parse_topo_spec(const std::string& name) {
  TopoSpec spec;
  size_t colon = name.find(':');
  std::string base = name.substr(0, colon);
  spec.kind = parse_topo(base);
  if (colon == std::string::npos) return spec;
  if (spec.kind != Topo::Torus)
    fail(Err::BadConfig, "only torus takes a :WxH suffix");
  std::string dims = name.substr(colon + 1);
  size_t x = dims.find('x');
  if (x == std::string::npos)
    fail(Err::BadConfig, "torus shape must be WxH, got '" + dims + "'");
  int w = static_cast<int>(parse_i64(dims.substr(0, x), "torus width"));
  int h = static_cast<int>(parse_i64(dims.substr(x + 1), "torus height"));
  spec.dims = {w, h};
  return spec;
}

std::optional<TopologyGraph> realize_topology(const TopoSpec& spec, int mu) {
  if (mu < 1) fail(Err::InvalidSize, "mu must be >= 1");
  switch (spec.kind) {
    case Topo::Torus: {
      if (spec.dims) {
        if (spec.dims->first * spec.dims->second != mu) return std::nullopt;
        return build_torus(spec.dims->first, spec.dims->second);
      }
      auto dims = torus_dims_for(mu);
      if (!dims) return std::nullopt;
      return build_torus(dims->first, dims->second);
    }
    case Topo::Hypercube:
      if ((mu & (mu - 1)) != 0) return std::nullopt;
      return build_topology(Topo::Hypercube, mu);
    default:
      return build_topology(spec.kind, mu);
  }
}

uint64_t rep_seed(uint64_t base_seed, int64_t point_index, int64_t rep_index) {
  return split(base_seed, static_cast<uint64_t>(point_index),
               static_cast<uint64_t>(rep_index));
}

Stats summarize(const std::vector<double>& values) {
  Stats st;
  size_t n = values.size();
  if (n == 0) fail(Err::InvalidSize, "cannot summarize zero values");
  double sum = 0.0;
  for (double v : values) sum += v;
  st.mean = sum / static_cast<double>(n);
  if (n >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - st.mean) * (v - st.mean);
    st.sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  double root = std::sqrt(static_cast<double>(n));
  st.ci95 = 1.96 * st.sd / root;
  st.ci99 = 2.576 * st.sd / root;
  return st;
}

namespace {

SummaryRow summarize_point(const std::vector<RunRecord>& runs, size_t begin,
                           size_t end) {
  const RunRecord& first = runs[begin];
  SummaryRow row;
  row.function = first.function;
  row.n = first.n;
  row.mu = first.mu;
  row.topology = first.topology;
  row.topo_params = first.topo_params;
  row.p = first.p;
  row.tau = first.tau;
  row.reps = static_cast<int64_t>(end - begin);
  std::vector<double> par, seq, com;
  par.reserve(end - begin);
  seq.reserve(end - begin);
  com.reserve(end - begin);
  int64_t successes = 0;
  for (size_t i = begin; i < end; ++i) {
    par.push_back(static_cast<double>(runs[i].t_par));
    seq.push_back(static_cast<double>(runs[i].t_seq));
    com.push_back(static_cast<double>(runs[i].t_com));
    successes += runs[i].success ? 1 : 0;
  }
  row.t_par = summarize(par);
  row.t_seq = summarize(seq);
  row.t_com = summarize(com);
  row.success_rate =
      static_cast<double>(successes) / static_cast<double>(row.reps);
  return row;
}

}  // namespace

ExperimentResult run_experiment(const SweepSpec& spec) {
  if (spec.reps < 1) fail(Err::BadConfig, "reps must be >= 1");
  if (spec.functions.empty() || spec.ns.empty() || spec.topologies.empty() ||
      spec.mus.empty() || spec.ps.empty() || spec.taus.empty())
    fail(Err::BadConfig, "every sweep axis needs at least one value");

  std::vector<TopoSpec> topo_specs;
  topo_specs.reserve(spec.topologies.size());
  for (const auto& t : spec.topologies) topo_specs.push_back(parse_topo_spec(t));

  ExperimentResult result;
  int64_t point = -1;
  for (const auto& fname : spec.functions) {
    for (int n : spec.ns) {
      Objective obj = make_objective(fname, n);
      std::optional<BitString> start;
      if (spec.fixed_start) {
        start = BitString::parse(*spec.fixed_start);
        if (start->size() != n)
          fail(Err::BadConfig, "fixed start length does not match n");
      }
      for (const auto& tspec : topo_specs) {
        for (int mu : spec.mus) {
          for (double p : spec.ps) {
            for (int64_t tau : spec.taus) {
              ++point;
              auto graph = realize_topology(tspec, mu);
              if (!graph) continue;  // unrealizable shape; index still advanced

              ModelConfig cfg;
              cfg.objective = obj;
              cfg.topology = *graph;
              cfg.p = p;
              cfg.tau = tau;
              cfg.budget = spec.budget;
              cfg.fixed_start = start;

              int64_t pt = point;
              auto one = [&](int64_t rep) {
                ModelConfig mine = cfg;
                mine.seed = rep_seed(spec.base_seed, pt, rep);
                RunOutcome out = run_model(mine);
                RunRecord rec;
                rec.function = fname;
                rec.n = n;
                rec.mu = mu;
                rec.topology = topo_name(tspec.kind);
                rec.topo_params = graph->params;
                rec.p = p;
                rec.tau = tau;
                rec.rep = rep;
                rec.seed = mine.seed;
                rec.t_par = out.t_par;
                rec.t_seq = out.t_seq;
                rec.t_com = out.t_com;
                rec.success = out.success;
                rec.best_fitness = out.best_fitness;
                return rec;
              };
              std::vector<RunRecord> recs = run_replications<RunRecord>(
                  spec.reps, spec.engine, one, spec.threads);

              size_t begin = result.runs.size();
              result.runs.insert(result.runs.end(), recs.begin(), recs.end());
              result.summary.push_back(
                  summarize_point(result.runs, begin, result.runs.size()));
              ++result.points_executed;
            }
          }
        }
      }
    }
  }
  result.points_enumerated = point + 1;
  if (result.points_executed == 0)
    fail(Err::BadConfig, "no sweep point is realizable (check topology/mu)");
  attach_speedup(result.summary);
  attach_bounds(result.summary);
  return result;
}

std::pair<double, double> speedup_efficiency(double baseline_mean_t_par,
                                             double mean_t_par, int mu) {
  if (!(baseline_mean_t_par > 0.0) || !std::isfinite(baseline_mean_t_par) ||
      !(mean_t_par > 0.0) || !std::isfinite(mean_t_par))
    fail(Err::MissingBaseline, "speedup needs positive finite mean times");
  if (mu < 1) fail(Err::InvalidSize, "mu must be >= 1");
  double speedup = baseline_mean_t_par / mean_t_par;
  return {speedup, speedup / static_cast<double>(mu)};
}

void attach_speedup(std::vector<SummaryRow>& rows) {
  // baseline key deliberately ignores topo_params: a 1x1 torus baseline
  // serves every torus shape
  auto key = [](const SummaryRow& r) {
    return r.function + "|" + std::to_string(r.n) + "|" + r.topology + "|" +
           csv_double(r.p) + "|" + std::to_string(r.tau);
  };
  std::map<std::string, double> baselines;
  for (const auto& r : rows)
    if (r.mu == 1 && r.t_par.mean > 0.0) baselines[key(r)] = r.t_par.mean;
  for (auto& r : rows) {
    auto it = baselines.find(key(r));
    if (it == baselines.end() || !(r.t_par.mean > 0.0)) continue;
    auto [s, e] = speedup_efficiency(it->second, r.t_par.mean, r.mu);
    r.speedup = s;
    r.efficiency = e;
  }
}

int attach_bounds(std::vector<SummaryRow>& rows) {
  int violations = 0;
  for (auto& r : rows) {
    Objective obj = make_objective(r.function, r.n);
    LevelPartition part = canonical_partition(obj);
    Topo kind = parse_topo(r.topology);
    BoundReport rep = best_bound(part, kind, r.mu, r.p);
    r.bound = rep.value;
    r.bound_source = rep.source;
    r.bound_t_com = communication_factor(kind, r.mu, r.p) * rep.value;
    bool bad = r.t_par.mean - r.t_par.ci99 > rep.value;
    r.violation = bad;
    if (bad) ++violations;
  }
  return violations;
}

void write_runs_csv(const std::string& path,
                    const std::vector<RunRecord>& runs) {
  CsvFile csv(path, {"function", "n", "mu", "topology", "topo_params", "p",
                     "tau", "rep", "seed", "t_par", "t_seq", "t_com", "success",
                     "best_fitness"});
  for (const auto& r : runs) {
    csv.row({r.function, std::to_string(r.n), std::to_string(r.mu), r.topology,
             r.topo_params, csv_double(r.p), std::to_string(r.tau),
             std::to_string(r.rep), std::to_string(r.seed),
             std::to_string(r.t_par), std::to_string(r.t_seq),
             std::to_string(r.t_com), r.success ? "1" : "0",
             std::to_string(r.best_fitness)});
  }
  csv.close();
}

namespace {

std::vector<std::string> point_echo(const SummaryRow& r) {
  return {r.function,     std::to_string(r.n),   std::to_string(r.mu),
          r.topology,     r.topo_params,         csv_double(r.p),
          std::to_string(r.tau), std::to_string(r.reps)};
}

void push_stats(std::vector<std::string>& f, const Stats& s) {
  f.push_back(csv_double(s.mean));
  f.push_back(csv_double(s.sd));
  f.push_back(csv_double(s.ci95));
  f.push_back(csv_double(s.ci99));
}

}  // namespace

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  CsvFile csv(
      path,
      {"function", "n", "mu", "topology", "topo_params", "p", "tau", "reps",
       "mean_t_par", "std_t_par", "ci95_t_par", "ci99_t_par", "mean_t_seq",
       "std_t_seq", "ci95_t_seq", "ci99_t_seq", "mean_t_com", "std_t_com",
       "ci95_t_com", "ci99_t_com", "success_rate", "speedup", "efficiency",
       "bound", "bound_source", "bound_t_com", "violation"});
  for (const auto& r : rows) {
    std::vector<std::string> f = point_echo(r);
    push_stats(f, r.t_par);
    push_stats(f, r.t_seq);
    push_stats(f, r.t_com);
    f.push_back(csv_double(r.success_rate));
    f.push_back(r.speedup ? csv_double(*r.speedup) : "");
    f.push_back(r.efficiency ? csv_double(*r.efficiency) : "");
    f.push_back(r.bound ? csv_double(*r.bound) : "");
    f.push_back(r.bound_source);
    f.push_back(r.bound_t_com ? csv_double(*r.bound_t_com) : "");
    f.push_back(r.violation ? (*r.violation ? "1" : "0") : "");
    csv.row(f);
  }
  csv.close();
}

void write_long_csv(const std::string& path,
                    const std::vector<SummaryRow>& rows) {
  CsvFile csv(path, {"function", "n", "mu", "topology", "topo_params", "p",
                     "tau", "reps", "metric", "value"});
  auto emit = [&](const SummaryRow& r, const std::string& metric, double v) {
    std::vector<std::string> f = point_echo(r);
    f.push_back(metric);
    f.push_back(csv_double(v));
    csv.row(f);
  };
  for (const auto& r : rows) {
    emit(r, "mean_t_par", r.t_par.mean);
    emit(r, "ci95_t_par", r.t_par.ci95);
    emit(r, "mean_t_seq", r.t_seq.mean);
    emit(r, "ci95_t_seq", r.t_seq.ci95);
    emit(r, "mean_t_com", r.t_com.mean);
    emit(r, "ci95_t_com", r.t_com.ci95);
    emit(r, "success_rate", r.success_rate);
    if (r.speedup) emit(r, "speedup", *r.speedup);
    if (r.efficiency) emit(r, "efficiency", *r.efficiency);
    if (r.bound) emit(r, "bound", *r.bound);
    if (r.bound_t_com) emit(r, "bound_t_com", *r.bound_t_com);
  }
  csv.close();
}

SweepSpec preset_spec(const std::string& name) {
  SweepSpec s;
  s.functions = {"onemax", "lo"};
  s.topologies = {"uniring", "biring", "torus", "hypercube", "complete"};
  s.taus = {1};
  s.reps = 100;
  if (name == "fig1-desk") {
    s.ns = {64};
    s.mus = {16};
    for (int i = 0; i <= 20; ++i) s.ps.push_back(i / 20.0);
    s.base_seed = 101;
    return s;
  }
  if (name == "fig2-desk") {
    s.ns = {64};
    s.mus = {1, 2, 4, 8, 16};
    s.ps = {0.1, 1.0};
    s.base_seed = 202;
    return s;
  }
  if (name == "fig1-paper") {
    // full-size counterpart of fig1-desk; expect hours of runtime
    s.ns = {256};
    s.mus = {64};
    for (int i = 0; i <= 100; ++i) s.ps.push_back(i / 100.0);
    s.base_seed = 303;
    return s;
  }
  fail(Err::BadConfig, "unknown preset '" + name +
                           "' (expected fig1-desk | fig2-desk | fig1-paper)");
}

}  // namespace pea
