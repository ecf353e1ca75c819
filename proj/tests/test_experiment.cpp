#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "pea/config_file.hpp"
#include "pea/csv.hpp"
#include "pea/experiment.hpp"

using namespace pea;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

SummaryRow point_row(const std::string& fn, int n, int mu,
                     const std::string& topo, double p, double mean,
                     double ci99) {
  SummaryRow r;
  r.function = fn;
  r.n = n;
  r.mu = mu;
  r.topology = topo;
  r.topo_params = "x";
  r.p = p;
  r.tau = 1;
  r.reps = 100;
  r.t_par.mean = mean;
  r.t_par.ci99 = ci99;
  return r;
}

}  // namespace

TEST_CASE("summary statistics of a three-value sample") {
  Stats st = summarize({1.0, 2.0, 3.0});
  CHECK(st.mean == 2.0);
  CHECK(st.sd == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(st.ci95 - 1.1316065276116665) <= 1e-12);
  CHECK(std::abs(st.ci99 - 1.4872542934324762) <= 1e-12);
  Stats one = summarize({7.0});
  CHECK(one.mean == 7.0);
  CHECK(one.sd == 0.0);
  CHECK(one.ci95 == 0.0);
  CHECK(one.ci99 == 0.0);
  Stats flat = summarize({4.0, 4.0, 4.0, 4.0});
  CHECK(flat.mean == 4.0);
  CHECK(flat.sd == 0.0);
  CHECK_THROWS_AS(summarize({}), Error);
}

TEST_CASE("speedup and efficiency") {
  auto [sp, eff] = speedup_efficiency(1000.0, 100.0, 8);
  CHECK(sp == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(eff == doctest::Approx(1.25).epsilon(1e-12));
  auto [sp1, eff1] = speedup_efficiency(50.0, 50.0, 1);
  CHECK(sp1 == 1.0);
  CHECK(eff1 == 1.0);
  CHECK_THROWS_AS(speedup_efficiency(0.0, 100.0, 4), Error);
  CHECK_THROWS_AS(speedup_efficiency(1000.0, 0.0, 4), Error);
  CHECK_THROWS_AS(
      speedup_efficiency(std::numeric_limits<double>::infinity(), 10.0, 4), Error);
}

TEST_CASE("objective names from the command line") {
  CHECK(make_objective("onemax", 8).kind == Fn::OneMax);
  CHECK(make_objective("lo", 8).kind == Fn::LeadingOnes);
  Objective j = make_objective("jump:3", 8);
  CHECK(j.kind == Fn::Jump);
  CHECK(j.k == 3);
  CHECK_THROWS_AS(make_objective("jump:0", 8), Error);
  CHECK_THROWS_AS(make_objective("jump:99", 16), Error);
  CHECK_THROWS_AS(make_objective("jump:x", 8), Error);
  CHECK_THROWS_AS(make_objective("bogus", 8), Error);
}

TEST_CASE("topology specs from the command line") {
  CHECK(parse_topo_spec("uniring").kind == Topo::UniRing);
  CHECK(!parse_topo_spec("uniring").dims.has_value());
  TopoSpec t = parse_topo_spec("torus:4x4");
  CHECK(t.kind == Topo::Torus);
  REQUIRE(t.dims.has_value());
  CHECK(t.dims->first == 4);
  CHECK(t.dims->second == 4);
  CHECK_THROWS_AS(parse_topo_spec("torus:4"), Error);
  CHECK_THROWS_AS(parse_topo_spec("hypercube:2x2"), Error);
  CHECK_THROWS_AS(parse_topo_spec("gossip"), Error);
}

TEST_CASE("topology realization distinguishes impossible from invalid shapes") {
  TopoSpec cube = parse_topo_spec("hypercube");
  for (int mu : {1, 2, 4, 8, 64}) CHECK(realize_topology(cube, mu).has_value());
  for (int mu : {3, 6, 12}) CHECK(!realize_topology(cube, mu).has_value());

  TopoSpec torus = parse_topo_spec("torus");
  auto auto16 = realize_topology(torus, 16);
  REQUIRE(auto16.has_value());
  CHECK(auto16->params == "4x4");
  CHECK(!realize_topology(torus, 8).has_value());

  TopoSpec shaped = parse_topo_spec("torus:4x4");
  CHECK(realize_topology(shaped, 16).has_value());
  CHECK(!realize_topology(shaped, 8).has_value());  // dims don't multiply to mu
  TopoSpec flat = parse_topo_spec("torus:2x4");
  CHECK_THROWS_AS(realize_topology(flat, 8), Error);  // matching but sub-3x3
  CHECK_THROWS_AS(realize_topology(cube, 0), Error);
}

TEST_CASE("replication seeds derive from base, point, and rep") {
  CHECK(rep_seed(7, 0, 0) == split(7, 0, 0));
  CHECK(rep_seed(7, 3, 11) == split(7, 3, 11));
  CHECK(rep_seed(7, 3, 11) != rep_seed(7, 3, 12));
  CHECK(rep_seed(7, 3, 11) != rep_seed(7, 4, 11));
}

TEST_CASE("a deterministic one-point sweep") {
  SweepSpec spec;
  spec.functions = {"onemax"};
  spec.ns = {1};
  spec.topologies = {"complete"};
  spec.mus = {1};
  spec.ps = {0.0};
  spec.reps = 3;
  spec.base_seed = 77;
  spec.fixed_start = "0";
  ExperimentResult res = run_experiment(spec);
  CHECK(res.points_enumerated == 1);
  CHECK(res.points_executed == 1);
  REQUIRE(res.runs.size() == 3);
  for (int64_t rep = 0; rep < 3; ++rep) {
    const RunRecord& r = res.runs[size_t(rep)];
    CHECK(r.rep == rep);
    CHECK(r.seed == rep_seed(77, 0, rep));
    CHECK(r.t_par == 1);
    CHECK(r.t_seq == 1);
    CHECK(r.t_com == 0);
    CHECK(r.success);
    CHECK(r.best_fitness == 1);
  }
  REQUIRE(res.summary.size() == 1);
  const SummaryRow& row = res.summary[0];
  CHECK(row.t_par.mean == 1.0);
  CHECK(row.t_par.sd == 0.0);
  CHECK(row.success_rate == 1.0);
  REQUIRE(row.speedup.has_value());
  CHECK(*row.speedup == 1.0);
  CHECK(*row.efficiency == 1.0);
  REQUIRE(row.bound.has_value());
  // p = 0 degrades the bound to the sequential sum, here e
  CHECK(std::abs(*row.bound - 2.718281828459045) <= 1e-9);
  REQUIRE(row.violation.has_value());
  CHECK(!*row.violation);
}

TEST_CASE("skipped shapes still advance the seed index") {
  SweepSpec spec;
  spec.functions = {"onemax"};
  spec.ns = {4};
  spec.topologies = {"hypercube"};
  spec.mus = {3, 4};  // mu = 3 has no hypercube
  spec.ps = {1.0};
  spec.reps = 2;
  spec.base_seed = 55;
  ExperimentResult res = run_experiment(spec);
  CHECK(res.points_enumerated == 2);
  CHECK(res.points_executed == 1);
  REQUIRE(res.runs.size() == 2);
  for (const RunRecord& r : res.runs) {
    CHECK(r.mu == 4);
    CHECK(r.seed == rep_seed(55, 1, r.rep));  // point 0 was the skipped shape
  }
}

TEST_CASE("a sweep with no realizable point is a config error") {
  SweepSpec spec;
  spec.functions = {"onemax"};
  spec.ns = {4};
  spec.topologies = {"hypercube"};
  spec.mus = {3};
  spec.ps = {0.5};
  CHECK_THROWS_AS(run_experiment(spec), Error);
  spec.mus.clear();
  CHECK_THROWS_AS(run_experiment(spec), Error);
}

TEST_CASE("speedup columns join on the single-island baseline") {
  std::vector<SummaryRow> rows;
  rows.push_back(point_row("lo", 64, 1, "complete", 0.5, 1000.0, 1.0));
  rows.push_back(point_row("lo", 64, 8, "complete", 0.5, 100.0, 1.0));
  rows.push_back(point_row("lo", 64, 8, "torus", 0.5, 100.0, 1.0));
  attach_speedup(rows);
  REQUIRE(rows[0].speedup.has_value());
  CHECK(*rows[0].speedup == 1.0);
  CHECK(*rows[0].efficiency == 1.0);
  REQUIRE(rows[1].speedup.has_value());
  CHECK(*rows[1].speedup == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(*rows[1].efficiency == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(!rows[2].speedup.has_value());  // no torus baseline present
  CHECK(!rows[2].efficiency.has_value());
}

TEST_CASE("bound columns flag means that clear the bound") {
  std::vector<SummaryRow> rows;
  rows.push_back(point_row("onemax", 4, 4, "complete", 1.0, 1e9, 10.0));
  rows.push_back(point_row("onemax", 4, 4, "complete", 1.0, 10.0, 1.0));
  int violations = attach_bounds(rows);
  CHECK(violations == 1);
  LevelPartition part = canonical_partition(Objective::onemax(4));
  double want = best_bound(part, Topo::Complete, 4, 1.0).value;
  for (const SummaryRow& r : rows) {
    REQUIRE(r.bound.has_value());
    CHECK(*r.bound == doctest::Approx(want).epsilon(1e-12));
    CHECK(r.bound_source == "best-per-level");
    REQUIRE(r.bound_t_com.has_value());
    CHECK(*r.bound_t_com == doctest::Approx(16.0 * want).epsilon(1e-12));
  }
  CHECK(*rows[0].violation);
  CHECK(!*rows[1].violation);
}

TEST_CASE("csv doubles use shortest round-trip spellings") {
  CHECK(csv_double(0.05) == "0.05");
  CHECK(csv_double(1.0) == "1");
  CHECK(csv_double(0.1 + 0.2) == "0.30000000000000004");
  CHECK(csv_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(csv_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(csv_join({"a", "b", "c"}) == "a,b,c\n");
}

TEST_CASE("csv writer enforces the header width") {
  const std::string path = "pea_selftest_width.csv";
  CsvFile csv(path, {"a", "b"});
  csv.row({"1", "2"});
  CHECK_THROWS_AS(csv.row({"1"}), Error);
  csv.close();
  CHECK(read_file(path) == "a,b\n1,2\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(CsvFile("no_such_dir_xyz/file.csv", {"a"}), Error);
}

TEST_CASE("sweep outputs are byte-identical across repeats") {
  SweepSpec spec;
  spec.functions = {"onemax"};
  spec.ns = {8};
  spec.topologies = {"biring"};
  spec.mus = {4};
  spec.ps = {0.5};
  spec.reps = 5;
  spec.base_seed = 99;
  ExperimentResult a = run_experiment(spec);
  ExperimentResult b = run_experiment(spec);
  const std::string ra = "pea_selftest_runs_a.csv", rb = "pea_selftest_runs_b.csv";
  const std::string sa = "pea_selftest_sum_a.csv", sb = "pea_selftest_sum_b.csv";
  const std::string la = "pea_selftest_long_a.csv", lb = "pea_selftest_long_b.csv";
  write_runs_csv(ra, a.runs);
  write_runs_csv(rb, b.runs);
  write_summary_csv(sa, a.summary);
  write_summary_csv(sb, b.summary);
  write_long_csv(la, a.summary);
  write_long_csv(lb, b.summary);
  std::string runs_a = read_file(ra);
  CHECK(runs_a == read_file(rb));
  CHECK(read_file(sa) == read_file(sb));
  CHECK(read_file(la) == read_file(lb));
  CHECK(first_line(runs_a) ==
        "function,n,mu,topology,topo_params,p,tau,rep,seed,t_par,t_seq,t_com,"
        "success,best_fitness");
  CHECK(first_line(read_file(sa)) ==
        "function,n,mu,topology,topo_params,p,tau,reps,mean_t_par,std_t_par,"
        "ci95_t_par,ci99_t_par,mean_t_seq,std_t_seq,ci95_t_seq,ci99_t_seq,"
        "mean_t_com,std_t_com,ci95_t_com,ci99_t_com,success_rate,speedup,"
        "efficiency,bound,bound_source,bound_t_com,violation");
  CHECK(first_line(read_file(la)) ==
        "function,n,mu,topology,topo_params,p,tau,reps,metric,value");
  for (const std::string& f : {ra, rb, sa, sb, la, lb}) std::remove(f.c_str());
}

TEST_CASE("config files parse, override, and validate") {
  ConfigMap cfg = parse_config_text(
      "# sweep shared by the desk presets\n"
      "\n"
      "function = onemax, lo\n"
      "  n=64\n"
      "p = 0.1,0.5, 1\n"
      "n = 32\n");
  CHECK(cfg.get("function") == "onemax, lo");
  CHECK(cfg.get("n") == "32");  // later assignment wins
  CHECK(cfg.get_or("tau", "1") == "1");
  CHECK(cfg.has("p"));
  CHECK(!cfg.has("mu"));
  CHECK_THROWS_AS(cfg.get("mu"), Error);
  CHECK_THROWS_AS(parse_config_text("novalue\n"), Error);
  CHECK(split_list("0.1,0.5, 1") == std::vector<std::string>{"0.1", "0.5", "1"});
  CHECK(split_list(" a ,, b ") == std::vector<std::string>{"a", "b"});
  CHECK(parse_i64("42", "n") == 42);
  CHECK(parse_u64("18446744073709551615", "seed") ==
        18446744073709551615ull);
  CHECK(parse_f64("0.25", "p") == 0.25);
  CHECK_THROWS_AS(parse_i64("4x", "n"), Error);
  CHECK_THROWS_AS(parse_f64("", "p"), Error);
  CHECK_THROWS_AS(parse_u64("-3", "seed"), Error);
}

TEST_CASE("presets pin the figure-style sweeps") {
  SweepSpec f1 = preset_spec("fig1-desk");
  CHECK(f1.functions == std::vector<std::string>{"onemax", "lo"});
  CHECK(f1.ns == std::vector<int>{64});
  CHECK(f1.mus == std::vector<int>{16});
  CHECK(f1.topologies.size() == 5);
  REQUIRE(f1.ps.size() == 21);
  CHECK(f1.ps.front() == 0.0);
  CHECK(f1.ps[1] == 0.05);
  CHECK(f1.ps.back() == 1.0);  // exact endpoint
  CHECK(f1.reps == 100);
  CHECK(f1.base_seed == 101);

  SweepSpec f2 = preset_spec("fig2-desk");
  CHECK(f2.mus == std::vector<int>{1, 2, 4, 8, 16});
  CHECK(f2.ps == std::vector<double>{0.1, 1.0});
  CHECK(f2.base_seed == 202);

  SweepSpec paper = preset_spec("fig1-paper");
  CHECK(paper.ns == std::vector<int>{256});
  CHECK(paper.mus == std::vector<int>{64});
  CHECK(paper.ps.size() == 101);
  CHECK(paper.base_seed == 303);

  CHECK_THROWS_AS(preset_spec("fig3"), Error);
}
