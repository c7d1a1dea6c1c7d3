#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lhg/analytics.hpp"
#include "lhg/edge_list.hpp"
#include "lhg/graph_store.hpp"
#include "lhg/workload.hpp"

namespace {

using nlohmann::json;

uint64_t default_seed() {
  if (const char* env = std::getenv("LHG_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

// Relative output paths land in $LHG_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  if (const char* dir = std::getenv("LHG_OUT_DIR")) {
    return std::string(dir) + "/" + path;
  }
  return path;
}

lhg::SyntheticGraphSpec parse_gen_spec(const std::string& text, uint64_t seed) {
  lhg::SyntheticGraphSpec spec;
  spec.seed = seed;
  bool have_n = false;
  bool have_m = false;

  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad --gen field (want key=value): " + item);
    }
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    const auto bad = [&]() {
      return std::invalid_argument("bad --gen value: " + item);
    };
    const auto to_u64 = [&](const std::string& v) {
      size_t pos = 0;
      unsigned long long x = 0;
      try {
        x = std::stoull(v, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (v.empty() || pos != v.size()) throw bad();
      return static_cast<uint64_t>(x);
    };
    const auto to_f64 = [&](const std::string& v) {
      size_t pos = 0;
      double x = 0.0;
      try {
        x = std::stod(v, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (v.empty() || pos != v.size()) throw bad();
      return x;
    };
    if (key == "n") {
      spec.vertex_count = to_u64(val);
      have_n = true;
    } else if (key == "m") {
      spec.edge_count = to_u64(val);
      have_m = true;
    } else if (key == "exp") {
      spec.skew_exponent = to_f64(val);
    } else {
      throw std::invalid_argument("unknown --gen key: " + key);
    }
  }
  if (!have_n || !have_m) {
    throw std::invalid_argument("--gen needs at least n=...,m=...");
  }
  return spec;
}

struct InputOpts {
  std::string input;
  std::string gen;
  bool undirected = false;
  bool unweighted = false;
};

void add_input_opts(CLI::App* cmd, InputOpts& o) {
  auto* src = cmd->add_option_group("input", "graph source (pick one)");
  src->add_option("--input", o.input, "edge list file, `u v [w]` per line");
  src->add_option("--gen", o.gen, "synthetic spec: n=...,m=...[,exp=...]");
  src->require_option(1);
  cmd->add_flag("--undirected", o.undirected,
                "emit file edges in both directions");
  cmd->add_flag("--unweighted", o.unweighted, "ignore weight columns");
}

std::vector<lhg::WeightedEdge> acquire_edges(const InputOpts& o, uint64_t seed) {
  if (!o.input.empty()) {
    return lhg::load_edge_list(o.input, o.undirected, !o.unweighted);
  }
  return lhg::generate_skewed_graph(parse_gen_spec(o.gen, seed));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw lhg::IoError("cannot open for writing: " + path);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  out.flush();
  if (!out) throw lhg::IoError("write failed: " + path);
}

json metrics_json(const lhg::RunMetrics& m) {
  return json{{"ops_per_second", m.ops_per_second},
              {"p50_ns", m.p50_ns},
              {"p99_ns", m.p99_ns},
              {"memory_bytes", m.memory_bytes},
              {"wall_time_s", m.wall_time_s},
              {"digest",
               {{"true_reads", m.digest.true_reads},
                {"edge_count", m.digest.edge_count},
                {"vertex_count", m.digest.vertex_count}}}};
}

int run_generate(uint64_t n, uint64_t m, double exp, uint64_t seed,
                 const std::string& out) {
  lhg::SyntheticGraphSpec spec{n, m, exp, seed};
  const auto edges = lhg::generate_skewed_graph(spec);
  const auto path = resolve_out(out);
  lhg::write_edge_list(path, edges);
  std::cout << "wrote " << edges.size() << " edges to " << path << "\n";
  return 0;
}

struct BenchOpts {
  InputOpts in;
  std::string store = "lhg";
  std::string workload = "A";
  uint64_t ops = 0;
  std::string read_target = "existing";
  double delete_fraction = 0.0;
  uint64_t t = 60;
  uint64_t seed = default_seed();
  std::string out = "bench.json";
};

int run_bench(const BenchOpts& o) {
  const auto edges = acquire_edges(o.in, o.seed);

  lhg::WorkloadSpec spec;
  spec.kind = lhg::parse_workload_kind(o.workload);
  spec.op_count = o.ops;
  spec.read_target = o.read_target == "mixed" ? lhg::ReadTarget::Mixed
                                              : lhg::ReadTarget::ExistingEdge;
  spec.seed = o.seed;
  spec.delete_fraction = o.delete_fraction;
  const auto ops = lhg::build_workload(edges, spec);

  lhg::StoreConfig cfg;
  cfg.degree_threshold = o.t;
  const auto store = lhg::make_store(lhg::parse_store_kind(o.store), cfg);
  if (spec.kind == lhg::WorkloadKind::C) lhg::preload(*store, edges);

  const auto metrics = lhg::run_workload(*store, ops);

  json doc = metrics_json(metrics);
  doc["store_kind"] = o.store;
  doc["workload"] = lhg::to_string(spec.kind);
  doc["t"] = o.t;
  doc["op_count"] = ops.size();
  doc["seed"] = o.seed;
  const auto path = resolve_out(o.out);
  write_text(path, doc.dump(2) + "\n");
  std::cout << doc.dump(2) << "\n";
  return 0;
}

struct AnalyticsOpts {
  InputOpts in;
  std::string algo;
  std::string store = "lhg";
  uint64_t t = 60;
  uint64_t source = 0;
  size_t iters = 20;
  double damping = 0.85;
  size_t parallelism = 1;
  uint64_t seed = default_seed();
  std::string out;
  std::string timing;
};

int run_analytics(const AnalyticsOpts& o) {
  const auto edges = acquire_edges(o.in, o.seed);
  lhg::StoreConfig cfg;
  cfg.degree_threshold = o.t;
  const auto store = lhg::make_store(lhg::parse_store_kind(o.store), cfg);
  lhg::preload(*store, edges);

  const bool integer_result = o.algo == "bfs" || o.algo == "wcc";
  std::map<uint64_t, uint64_t> ures;
  std::map<uint64_t, double> dres;

  const auto t0 = std::chrono::steady_clock::now();
  if (o.algo == "bfs") {
    ures = lhg::bfs(*store, o.source);
  } else if (o.algo == "pagerank") {
    dres = lhg::pagerank(*store, o.iters, o.damping);
  } else if (o.algo == "lcc") {
    dres = lhg::lcc(*store, o.parallelism);
  } else if (o.algo == "wcc") {
    ures = lhg::wcc(*store);
  } else {
    dres = lhg::sssp(*store, o.source);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const std::string out_path =
      resolve_out(o.out.empty() ? "analytics_" + o.algo + ".tsv" : o.out);
  {
    auto out = open_out(out_path);
    if (integer_result) {
      lhg::write_results(out, ures);
    } else {
      lhg::write_results(out, dres);
    }
    out.flush();
    if (!out) throw lhg::IoError("write failed: " + out_path);
  }

  json doc{{"algorithm", o.algo},
           {"store_kind", o.store},
           {"t", o.t},
           {"vertices", integer_result ? ures.size() : dres.size()},
           {"seconds", seconds},
           {"results", out_path}};
  const std::string timing_path =
      resolve_out(o.timing.empty() ? "analytics_" + o.algo + ".json" : o.timing);
  write_text(timing_path, doc.dump(2) + "\n");
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int run_microbench(const std::vector<uint64_t>& sizes, uint64_t trials,
                   uint64_t seed, const std::string& out) {
  const auto rows = lhg::crossover_microbench(sizes, trials, seed);
  std::ostringstream csv;
  csv << "n,structure,op,mean_ns\n";
  csv << std::setprecision(17);
  for (const auto& row : rows) {
    csv << row.n << ',' << row.structure << ',' << row.op << ',' << row.mean_ns
        << '\n';
  }
  const auto path = resolve_out(out);
  write_text(path, csv.str());
  std::cout << "wrote " << rows.size() << " rows to " << path << "\n";
  return 0;
}

struct SweepOpts {
  InputOpts in;
  std::vector<uint64_t> thresholds = {1, 2, 10, 60, 150};
  std::string workload = "A";
  uint64_t ops = 0;
  std::string read_target = "existing";
  uint64_t seed = default_seed();
  bool kernels = false;
  size_t iters = 10;
  std::string out = "sweep_t.csv";
};

int run_sweep(const SweepOpts& o) {
  const auto edges = acquire_edges(o.in, o.seed);
  lhg::SweepOptions opts;
  opts.workload.kind = lhg::parse_workload_kind(o.workload);
  opts.workload.op_count = o.ops;
  opts.workload.read_target = o.read_target == "mixed"
                                  ? lhg::ReadTarget::Mixed
                                  : lhg::ReadTarget::ExistingEdge;
  opts.workload.seed = o.seed;
  opts.run_kernels = o.kernels;
  opts.pagerank_iterations = o.iters;

  const auto rows = lhg::sweep_threshold(edges, o.thresholds, opts);

  std::ostringstream csv;
  csv << "t,ops_per_second,p50_ns,p99_ns,memory_bytes,wall_time_s,"
         "true_reads,edge_count,vertex_count,pagerank_s,wcc_s\n";
  csv << std::setprecision(17);
  bool digests_agree = true;
  for (const auto& row : rows) {
    const auto& m = row.metrics;
    csv << row.threshold << ',' << m.ops_per_second << ',' << m.p50_ns << ','
        << m.p99_ns << ',' << m.memory_bytes << ',' << m.wall_time_s << ','
        << m.digest.true_reads << ',' << m.digest.edge_count << ','
        << m.digest.vertex_count << ',' << row.pagerank_s << ',' << row.wcc_s
        << '\n';
    digests_agree = digests_agree && m.digest == rows[0].metrics.digest;
  }
  const auto path = resolve_out(o.out);
  write_text(path, csv.str());
  std::cout << "wrote " << rows.size() << " rows to " << path
            << (digests_agree ? " (digests agree)" : " (DIGESTS DIVERGE)")
            << "\n";
  return digests_agree ? 0 : 3;
}

int run_verify(const std::string& store, uint64_t ops, uint64_t space,
               uint64_t seed, uint64_t t, uint64_t corrupt_at) {
  lhg::StoreConfig cfg;
  cfg.degree_threshold = t;
  const auto report = lhg::verify_store(lhg::parse_store_kind(store), ops,
                                        space, seed, cfg, corrupt_at);
  if (report.ok) {
    std::cout << "verify: OK, " << ops << " ops match the oracle\n";
    return 0;
  }
  std::cout << "verify: MISMATCH, minimal failing prefix is "
            << report.failing_prefix << " ops\n"
            << report.detail << "\n";
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for the learned-index graph stores"};
  app.require_subcommand(1);

  auto* gen_cmd =
      app.add_subcommand("generate", "emit a synthetic skewed edge list");
  uint64_t gen_n = 0;
  uint64_t gen_m = 0;
  double gen_exp = 2.0;
  uint64_t gen_seed = default_seed();
  std::string gen_out;
  gen_cmd->add_option("--n", gen_n, "vertex count")->required();
  gen_cmd->add_option("--m", gen_m, "edge count")->required();
  gen_cmd->add_option("--exp", gen_exp, "power-law exponent")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "rng seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "output path")->required();

  auto* bench_cmd = app.add_subcommand("bench", "run a workload and report");
  BenchOpts bench;
  add_input_opts(bench_cmd, bench.in);
  bench_cmd->add_option("--store", bench.store, "store kind")
      ->check(CLI::IsMember({"lhg", "lg", "oracle"}))
      ->capture_default_str();
  bench_cmd->add_option("--workload", bench.workload, "A, B or C")
      ->check(CLI::IsMember({"A", "B", "C", "a", "b", "c"}))
      ->capture_default_str();
  bench_cmd->add_option("--ops", bench.ops, "op count, 0 = natural size")
      ->capture_default_str();
  bench_cmd->add_option("--read-target", bench.read_target, "read probes")
      ->check(CLI::IsMember({"existing", "mixed"}))
      ->capture_default_str();
  bench_cmd
      ->add_option("--delete-fraction", bench.delete_fraction,
                   "extra deletes appended, as a fraction of base ops")
      ->capture_default_str();
  bench_cmd->add_option("--t", bench.t, "promotion degree threshold")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "rng seed")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "metrics JSON path")
      ->capture_default_str();

  auto* ana_cmd = app.add_subcommand("analytics", "run one kernel and report");
  AnalyticsOpts ana;
  add_input_opts(ana_cmd, ana.in);
  ana_cmd->add_option("--algo", ana.algo, "kernel")
      ->check(CLI::IsMember({"bfs", "pagerank", "lcc", "wcc", "sssp"}))
      ->required();
  ana_cmd->add_option("--store", ana.store, "store kind")
      ->check(CLI::IsMember({"lhg", "lg", "oracle"}))
      ->capture_default_str();
  ana_cmd->add_option("--t", ana.t, "promotion degree threshold")
      ->capture_default_str();
  ana_cmd->add_option("--source", ana.source, "source vertex for bfs/sssp")
      ->capture_default_str();
  ana_cmd->add_option("--iters", ana.iters, "pagerank iterations")
      ->capture_default_str();
  ana_cmd->add_option("--damping", ana.damping, "pagerank damping")
      ->capture_default_str();
  ana_cmd->add_option("--parallelism", ana.parallelism, "lcc worker threads")
      ->capture_default_str();
  ana_cmd->add_option("--seed", ana.seed, "rng seed for --gen")
      ->capture_default_str();
  ana_cmd->add_option("--out", ana.out, "per-vertex results TSV path");
  ana_cmd->add_option("--timing", ana.timing, "timing JSON path");

  auto* micro_cmd = app.add_subcommand(
      "microbench", "unsorted array vs learned index crossover");
  std::vector<uint64_t> micro_sizes = {1,  2,   4,   8,    16,   32,  64,
                                       128, 256, 512, 1024, 2048, 4096};
  uint64_t micro_trials = 2000;
  uint64_t micro_seed = default_seed();
  std::string micro_out = "microbench.csv";
  micro_cmd->add_option("--sizes", micro_sizes, "structure sizes to probe")
      ->delimiter(',')
      ->capture_default_str();
  micro_cmd->add_option("--trials", micro_trials, "measured ops per cell")
      ->capture_default_str();
  micro_cmd->add_option("--seed", micro_seed, "rng seed")->capture_default_str();
  micro_cmd->add_option("--out", micro_out, "CSV path")->capture_default_str();

  auto* sweep_cmd =
      app.add_subcommand("sweep-t", "replay one workload across thresholds");
  SweepOpts sweep;
  add_input_opts(sweep_cmd, sweep.in);
  sweep_cmd->add_option("--t", sweep.thresholds, "thresholds to sweep")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--workload", sweep.workload, "A, B or C")
      ->check(CLI::IsMember({"A", "B", "C", "a", "b", "c"}))
      ->capture_default_str();
  sweep_cmd->add_option("--ops", sweep.ops, "op count, 0 = natural size")
      ->capture_default_str();
  sweep_cmd->add_option("--read-target", sweep.read_target, "read probes")
      ->check(CLI::IsMember({"existing", "mixed"}))
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "rng seed")->capture_default_str();
  sweep_cmd->add_flag("--kernels", sweep.kernels,
                      "also time pagerank and wcc per threshold");
  sweep_cmd->add_option("--iters", sweep.iters, "pagerank iterations")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "CSV path")->capture_default_str();

  auto* verify_cmd = app.add_subcommand(
      "verify", "replay seeded mixed traffic against the oracle");
  std::string verify_store_kind = "lhg";
  uint64_t verify_ops = 100000;
  uint64_t verify_space = 1000;
  uint64_t verify_seed = default_seed();
  uint64_t verify_t = 60;
  uint64_t verify_corrupt = UINT64_MAX;
  verify_cmd->add_option("--store", verify_store_kind, "store kind")
      ->check(CLI::IsMember({"lhg", "lg", "oracle"}))
      ->capture_default_str();
  verify_cmd->add_option("--ops", verify_ops, "op count")->capture_default_str();
  verify_cmd->add_option("--space", verify_space, "vertex id space")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "rng seed")
      ->capture_default_str();
  verify_cmd->add_option("--t", verify_t, "promotion degree threshold")
      ->capture_default_str();
  verify_cmd->add_option("--corrupt-at", verify_corrupt)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen_cmd->parsed()) {
      return run_generate(gen_n, gen_m, gen_exp, gen_seed, gen_out);
    }
    if (bench_cmd->parsed()) return run_bench(bench);
    if (ana_cmd->parsed()) return run_analytics(ana);
    if (micro_cmd->parsed()) {
      return run_microbench(micro_sizes, micro_trials, micro_seed, micro_out);
    }
    if (sweep_cmd->parsed()) return run_sweep(sweep);
    if (verify_cmd->parsed()) {
      return run_verify(verify_store_kind, verify_ops, verify_space,
                        verify_seed, verify_t, verify_corrupt);
    }
  } catch (const lhg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
