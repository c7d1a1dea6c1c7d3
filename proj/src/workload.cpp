#include "lhg/workload.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_set>
#include <utility>

#include "lhg/analytics.hpp"
#include "lhg/edge_block.hpp"
#include "lhg/lhg_store.hpp"
#include "lhg/oracle_store.hpp"
#include "lhg/rng.hpp"

namespace lhg {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t elapsed_ns(Clock::time_point from, Clock::time_point to) {
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count());
}

double elapsed_s(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double>(to - from).count();
}

}  // namespace

ZipfSampler::ZipfSampler(uint64_t n, double exponent) {
  if (n == 0) throw std::invalid_argument("zipf sampler needs a non-empty domain");
  cdf_.resize(n);
  double total = 0.0;
  for (uint64_t i = 0; i < n; ++i) {
    total += std::pow(static_cast<double>(i + 1), -exponent);
    cdf_[i] = total;
  }
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

uint64_t ZipfSampler::operator()(std::mt19937_64& rng) const {
  const double x = unit_real(rng);
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), x);
  if (it == cdf_.end()) --it;
  return static_cast<uint64_t>(it - cdf_.begin());
}

std::vector<WeightedEdge> generate_skewed_graph(const SyntheticGraphSpec& spec) {
  const uint64_t n = spec.vertex_count;
  const uint64_t m = spec.edge_count;
  if (m == 0) return {};
  if (n < 2) {
    throw std::invalid_argument("synthetic graph needs >= 2 vertices to hold edges");
  }
  if (static_cast<unsigned __int128>(m) >
      static_cast<unsigned __int128>(n) * (n - 1)) {
    throw std::invalid_argument(
        "synthetic graph cannot fit that many simple directed edges");
  }

  std::mt19937_64 rng(spec.seed);
  const uint64_t cap = n - 1;

  std::vector<double> weight(n);
  double total = 0.0;
  for (uint64_t i = 0; i < n; ++i) {
    weight[i] = std::pow(static_cast<double>(i + 1), -spec.skew_exponent);
    total += weight[i];
  }

  std::vector<uint64_t> deg(n, 0);
  std::vector<std::pair<double, uint64_t>> fractional;
  uint64_t assigned = 0;
  for (uint64_t i = 0; i < n; ++i) {
    const double exact = static_cast<double>(m) * weight[i] / total;
    uint64_t d = static_cast<uint64_t>(exact);
    if (d > cap) d = cap;
    deg[i] = d;
    assigned += d;
    if (d < cap) fractional.push_back({exact - std::floor(exact), i});
  }
  std::sort(fractional.begin(), fractional.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  uint64_t leftover = m - assigned;
  for (const auto& [frac, i] : fractional) {
    (void)frac;
    if (leftover == 0) break;
    if (deg[i] < cap) {
      ++deg[i];
      --leftover;
    }
  }
  while (leftover > 0) {
    for (uint64_t i = 0; i < n && leftover > 0; ++i) {
      if (deg[i] < cap) {
        ++deg[i];
        --leftover;
      }
    }
  }

  std::vector<WeightedEdge> edges;
  edges.reserve(m);
  std::vector<uint64_t> scratch;
  std::unordered_set<uint64_t> picked;
  for (uint64_t u = 0; u < n; ++u) {
    const uint64_t d = deg[u];
    if (d == 0) continue;
    const auto next_weight = [&rng]() {
      return 0.25 * static_cast<double>(1 + bounded(rng, 16));
    };
    if (d > (n - 1) / 2) {
      scratch.clear();
      scratch.reserve(n - 1);
      for (uint64_t v = 0; v < n; ++v) {
        if (v != u) scratch.push_back(v);
      }
      for (uint64_t k = 0; k < d; ++k) {
        const uint64_t j = k + bounded(rng, scratch.size() - k);
        std::swap(scratch[k], scratch[j]);
        edges.push_back({u, scratch[k], next_weight()});
      }
    } else {
      picked.clear();
      while (picked.size() < d) {
        const uint64_t v = bounded(rng, n);
        if (v == u || !picked.insert(v).second) continue;
        edges.push_back({u, v, next_weight()});
      }
    }
  }
  return edges;
}

WorkloadKind parse_workload_kind(const std::string& name) {
  if (name == "A" || name == "a") return WorkloadKind::A;
  if (name == "B" || name == "b") return WorkloadKind::B;
  if (name == "C" || name == "c") return WorkloadKind::C;
  throw std::invalid_argument("unknown workload kind: " + name +
                              " (expected A, B or C)");
}

std::string to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::A: return "A";
    case WorkloadKind::B: return "B";
    case WorkloadKind::C: return "C";
  }
  return "?";
}

namespace {

// Picks a pair that never occurs in the dataset, for the Mixed read target.
class AbsentPicker {
 public:
  explicit AbsentPicker(const std::vector<WeightedEdge>& edges) {
    for (const WeightedEdge& e : edges) {
      present_.emplace(e.u, e.v);
      max_id_ = std::max({max_id_, e.u, e.v});
    }
  }

  std::pair<uint64_t, uint64_t> operator()(std::mt19937_64& rng) const {
    const uint64_t span = max_id_ + 1;
    for (int tries = 0; tries < 64; ++tries) {
      const uint64_t a = bounded(rng, span);
      const uint64_t b = bounded(rng, span);
      if (!present_.count({a, b})) return {a, b};
    }
    return {max_id_ + 1 + bounded(rng, 1024), bounded(rng, span)};
  }

 private:
  std::set<std::pair<uint64_t, uint64_t>> present_;
  uint64_t max_id_ = 0;
};

}  // namespace

std::vector<Operation> build_workload(const std::vector<WeightedEdge>& edges,
                                      const WorkloadSpec& spec) {
  if (spec.delete_fraction < 0.0 || spec.delete_fraction > 1.0) {
    throw std::invalid_argument("delete_fraction must lie in [0, 1]");
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<WeightedEdge> order(edges);
  shuffle_vec(order, rng);

  std::vector<Operation> ops;
  uint64_t inserted_span = 0;  // prefix of `order` the ops actually insert

  switch (spec.kind) {
    case WorkloadKind::A: {
      ops.reserve(order.size());
      for (const WeightedEdge& e : order) {
        ops.push_back({OpKind::Insert, e.u, e.v, e.w});
      }
      inserted_span = order.size();
      break;
    }
    case WorkloadKind::B: {
      const uint64_t total = spec.op_count ? spec.op_count : 2 * order.size();
      if (total == 0) break;
      if (order.empty()) {
        throw std::invalid_argument("workload B needs a non-empty edge set");
      }
      const uint64_t reads = total / 2;
      const uint64_t inserts = total - reads;
      AbsentPicker absent(edges);
      std::vector<WeightedEdge> pool;
      pool.reserve(inserts);
      uint64_t ins_done = 0;
      uint64_t rd_done = 0;
      ops.reserve(total);
      while (ins_done < inserts || rd_done < reads) {
        const uint64_t left_i = inserts - ins_done;
        const uint64_t left_r = reads - rd_done;
        const bool do_insert =
            pool.empty() || (left_i > 0 && bounded(rng, left_i + left_r) < left_i);
        if (do_insert) {
          const WeightedEdge& e = order[ins_done % order.size()];
          ops.push_back({OpKind::Insert, e.u, e.v, e.w});
          pool.push_back(e);
          ++ins_done;
        } else {
          if (spec.read_target == ReadTarget::Mixed && bounded(rng, 2) == 0) {
            const auto [a, b] = absent(rng);
            ops.push_back({OpKind::Read, a, b, 0.0});
          } else {
            const WeightedEdge& t = pool[bounded(rng, pool.size())];
            ops.push_back({OpKind::Read, t.u, t.v, 0.0});
          }
          ++rd_done;
        }
      }
      inserted_span = std::min<uint64_t>(ins_done, order.size());
      break;
    }
    case WorkloadKind::C: {
      const uint64_t total = spec.op_count ? spec.op_count : order.size();
      if (total == 0) break;
      if (order.empty()) {
        throw std::invalid_argument("workload C needs a non-empty edge set");
      }
      AbsentPicker absent(edges);
      ops.reserve(total);
      for (uint64_t k = 0; k < total; ++k) {
        if (spec.read_target == ReadTarget::Mixed && bounded(rng, 2) == 0) {
          const auto [a, b] = absent(rng);
          ops.push_back({OpKind::Read, a, b, 0.0});
        } else {
          const WeightedEdge& t = order[bounded(rng, order.size())];
          ops.push_back({OpKind::Read, t.u, t.v, 0.0});
        }
      }
      inserted_span = order.size();
      break;
    }
  }

  if (spec.delete_fraction > 0.0 && inserted_span > 0) {
    const uint64_t extra = static_cast<uint64_t>(
        std::llround(spec.delete_fraction * static_cast<double>(ops.size())));
    for (uint64_t k = 0; k < extra; ++k) {
      const WeightedEdge& e = order[bounded(rng, inserted_span)];
      ops.push_back({OpKind::Delete, e.u, e.v, 0.0});
    }
  }
  return ops;
}

void preload(GraphStore& store, const std::vector<WeightedEdge>& edges) {
  for (const WeightedEdge& e : edges) store.insert_edge(e.u, e.v, e.w);
}

RunMetrics run_workload(GraphStore& store, const std::vector<Operation>& ops) {
  RunMetrics rm;
  uint64_t true_reads = 0;
  const auto apply = [&](const Operation& op) {
    switch (op.kind) {
      case OpKind::Insert:
        store.insert_edge(op.u, op.v, op.w);
        break;
      case OpKind::Read:
        true_reads += store.find_edge(op.u, op.v) ? 1 : 0;
        break;
      case OpKind::Delete:
        store.delete_edge(op.u, op.v);
        break;
    }
  };

  const size_t n = ops.size();
  if (n > 0) {
    // Sample at most ~10k per-op latencies; timing every op would tax the
    // fast stores far more than the slow ones.
    const size_t stride = n <= 10000 ? 1 : (n + 9999) / 10000;
    std::vector<uint64_t> lat;
    lat.reserve(n / stride + 1);
    const auto t0 = Clock::now();
    for (size_t i = 0; i < n; ++i) {
      if (i % stride == 0) {
        const auto s = Clock::now();
        apply(ops[i]);
        lat.push_back(elapsed_ns(s, Clock::now()));
      } else {
        apply(ops[i]);
      }
    }
    rm.wall_time_s = elapsed_s(t0, Clock::now());
    rm.ops_per_second =
        rm.wall_time_s > 0.0 ? static_cast<double>(n) / rm.wall_time_s : 0.0;
    std::sort(lat.begin(), lat.end());
    rm.p50_ns = lat[(lat.size() - 1) / 2];
    rm.p99_ns = lat[(lat.size() - 1) * 99 / 100];
  }

  rm.memory_bytes = store.memory_bytes();
  rm.digest.true_reads = true_reads;
  rm.digest.edge_count = store.edge_count();
  uint64_t live = 0;
  store.for_each_vertex([&](uint64_t u) {
    if (store.degree(u) > 0) ++live;
  });
  rm.digest.vertex_count = live;
  return rm;
}

namespace {

volatile double g_bench_sink = 0.0;

std::vector<uint64_t> distinct_keys(std::mt19937_64& rng, size_t count) {
  std::unordered_set<uint64_t> seen;
  std::vector<uint64_t> keys;
  keys.reserve(count);
  while (keys.size() < count) {
    const uint64_t k = rng();
    if (seen.insert(k).second) keys.push_back(k);
  }
  return keys;
}

}  // namespace

std::vector<MicrobenchRow> crossover_microbench(
    const std::vector<uint64_t>& sizes, uint64_t trials, uint64_t seed) {
  if (sizes.empty()) throw std::invalid_argument("microbench needs sizes");
  if (trials == 0) trials = 1;

  std::mt19937_64 rng(seed);
  std::vector<MicrobenchRow> rows;
  const IndexConfig cfg;

  for (const uint64_t n : sizes) {
    if (n == 0) throw std::invalid_argument("microbench sizes must be positive");
    const uint64_t batch = std::min<uint64_t>(32, std::max<uint64_t>(1, trials));
    const uint64_t reps = std::max<uint64_t>(1, trials / batch);
    const auto keys = distinct_keys(rng, n + (reps + 1) * batch);

    std::vector<std::pair<uint64_t, double>> base;
    base.reserve(n);
    for (uint64_t i = 0; i < n; ++i) base.push_back({keys[i], 1.5});
    std::sort(base.begin(), base.end());

    std::vector<uint32_t> probes(trials);
    for (uint32_t& p : probes) p = static_cast<uint32_t>(bounded(rng, n));

    UnsortedArray array;
    for (uint64_t i = 0; i < n; ++i) array.upsert(keys[i], 1.5);
    EdgeIndex learned = EdgeIndex::bulk_load(base, cfg);

    const auto time_lookups = [&](auto&& lookup) {
      double sum = 0.0;
      const size_t warm = std::min<size_t>(probes.size(), 256);
      for (size_t i = 0; i < warm; ++i) sum += lookup(keys[probes[i]]);
      const auto t0 = Clock::now();
      for (const uint32_t p : probes) sum += lookup(keys[p]);
      const auto t1 = Clock::now();
      g_bench_sink = g_bench_sink + sum;
      return static_cast<double>(elapsed_ns(t0, t1)) /
             static_cast<double>(probes.size());
    };

    const double array_lookup =
        time_lookups([&](uint64_t k) { return *array.find(k); });
    const double learned_lookup =
        time_lookups([&](uint64_t k) { return *learned.find(k); });

    // Inserts run in small batches against a structure of steady size n:
    // the array gets the batch removed again after the clock stops, and the
    // learned index is rebuilt per repetition.
    uint64_t array_ns = 0;
    for (uint64_t rep = 0; rep <= reps; ++rep) {
      const uint64_t* chunk = keys.data() + n + rep * batch;
      const auto t0 = Clock::now();
      for (uint64_t i = 0; i < batch; ++i) array.upsert(chunk[i], 2.0);
      const auto t1 = Clock::now();
      if (rep > 0) array_ns += elapsed_ns(t0, t1);
      for (uint64_t i = 0; i < batch; ++i) array.remove(chunk[i]);
    }
    const double array_insert =
        static_cast<double>(array_ns) / static_cast<double>(reps * batch);

    uint64_t learned_ns = 0;
    for (uint64_t rep = 0; rep <= reps; ++rep) {
      EdgeIndex fresh = EdgeIndex::bulk_load(base, cfg);
      const uint64_t* chunk = keys.data() + n + rep * batch;
      const auto t0 = Clock::now();
      for (uint64_t i = 0; i < batch; ++i) fresh.insert(chunk[i], 2.0);
      const auto t1 = Clock::now();
      if (rep > 0) learned_ns += elapsed_ns(t0, t1);
    }
    const double learned_insert =
        static_cast<double>(learned_ns) / static_cast<double>(reps * batch);

    rows.push_back({n, "array", "lookup", array_lookup});
    rows.push_back({n, "learned", "lookup", learned_lookup});
    rows.push_back({n, "array", "insert", array_insert});
    rows.push_back({n, "learned", "insert", learned_insert});
  }
  return rows;
}

std::vector<SweepRow> sweep_threshold(const std::vector<WeightedEdge>& edges,
                                      const std::vector<uint64_t>& thresholds,
                                      const SweepOptions& opts) {
  if (thresholds.empty()) throw std::invalid_argument("sweep needs thresholds");

  const auto ops = build_workload(edges, opts.workload);
  std::vector<SweepRow> rows;
  rows.reserve(thresholds.size());
  for (const uint64_t t : thresholds) {
    StoreConfig cfg;
    cfg.degree_threshold = t;
    LhgStore store(cfg);
    if (opts.workload.kind == WorkloadKind::C) preload(store, edges);
    SweepRow row;
    row.threshold = t;
    row.metrics = run_workload(store, ops);
    if (opts.run_kernels) {
      auto t0 = Clock::now();
      pagerank(store, opts.pagerank_iterations);
      row.pagerank_s = elapsed_s(t0, Clock::now());
      t0 = Clock::now();
      wcc(store);
      row.wcc_s = elapsed_s(t0, Clock::now());
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<Operation> make_mixed_ops(uint64_t op_count, uint64_t vertex_space,
                                      double skew_exponent, uint64_t seed) {
  const ZipfSampler zipf(vertex_space, skew_exponent);
  std::mt19937_64 rng(seed);
  std::vector<Operation> ops;
  ops.reserve(op_count);
  for (uint64_t k = 0; k < op_count; ++k) {
    const uint64_t u = zipf(rng);
    const uint64_t v = zipf(rng);
    const uint64_t roll = bounded(rng, 4);
    const double w = 0.25 * static_cast<double>(1 + bounded(rng, 16));
    if (roll < 2) {
      ops.push_back({OpKind::Insert, u, v, w});
    } else if (roll == 2) {
      ops.push_back({OpKind::Read, u, v, 0.0});
    } else {
      ops.push_back({OpKind::Delete, u, v, 0.0});
    }
  }
  return ops;
}

namespace {

std::string describe_op(uint64_t index, const Operation& op) {
  const char* name = op.kind == OpKind::Insert   ? "insert"
                     : op.kind == OpKind::Read   ? "read"
                                                 : "delete";
  char buf[128];
  std::snprintf(buf, sizeof buf, "op %llu: %s(%llu, %llu, %.17g)",
                static_cast<unsigned long long>(index), name,
                static_cast<unsigned long long>(op.u),
                static_cast<unsigned long long>(op.v), op.w);
  return buf;
}

std::vector<std::pair<uint64_t, double>> sorted_neighbors(
    const GraphStore& store, uint64_t u) {
  auto nbrs = store.neighbors(u);
  std::sort(nbrs.begin(), nbrs.end());
  return nbrs;
}

}  // namespace

VerifyReport verify_store(StoreKind kind, uint64_t op_count,
                          uint64_t vertex_space, uint64_t seed,
                          const StoreConfig& cfg, uint64_t corrupt_at) {
  const auto ops = make_mixed_ops(op_count, vertex_space, 2.0, seed);
  const auto store = make_store(kind, cfg);
  OracleStore oracle;

  VerifyReport report;
  const auto fail = [&](uint64_t index, std::string what) {
    report.ok = false;
    report.failing_prefix = index + 1;
    report.detail = std::move(what);
  };

  for (uint64_t i = 0; i < ops.size(); ++i) {
    const Operation& op = ops[i];
    const bool drop = i >= corrupt_at;
    switch (op.kind) {
      case OpKind::Insert: {
        const InsertResult want = oracle.insert_edge(op.u, op.v, op.w);
        if (!drop) {
          const InsertResult got = store->insert_edge(op.u, op.v, op.w);
          if (got != want) fail(i, describe_op(i, op) + ": insert result diverged");
        }
        break;
      }
      case OpKind::Read: {
        const bool want = oracle.find_edge(op.u, op.v);
        const bool got = store->find_edge(op.u, op.v);
        if (got != want) fail(i, describe_op(i, op) + ": read result diverged");
        break;
      }
      case OpKind::Delete: {
        const RemoveResult want = oracle.delete_edge(op.u, op.v);
        if (!drop) {
          const RemoveResult got = store->delete_edge(op.u, op.v);
          if (got != want) fail(i, describe_op(i, op) + ": delete result diverged");
        }
        break;
      }
    }
    if (!report.ok) return report;
    if (store->edge_count() != oracle.edge_count()) {
      fail(i, describe_op(i, op) + ": edge counts diverged");
      return report;
    }
    if ((i & 1023) == 0) {
      if (store->degree(op.u) != oracle.degree(op.u) ||
          store->degree(op.v) != oracle.degree(op.v)) {
        fail(i, describe_op(i, op) + ": degree diverged");
        return report;
      }
    }
  }

  const auto sweep_fail = [&](std::string what) {
    report.ok = false;
    report.failing_prefix = ops.size();
    report.detail = std::move(what);
  };
  std::vector<uint64_t> store_verts;
  store->for_each_vertex([&](uint64_t u) {
    if (store->degree(u) > 0) store_verts.push_back(u);
  });
  std::vector<uint64_t> oracle_verts;
  oracle.for_each_vertex([&](uint64_t u) {
    if (oracle.degree(u) > 0) oracle_verts.push_back(u);
  });
  if (store_verts != oracle_verts) {
    sweep_fail("final sweep: live vertex sets differ");
    return report;
  }
  for (const uint64_t u : store_verts) {
    if (sorted_neighbors(*store, u) != sorted_neighbors(oracle, u)) {
      sweep_fail("final sweep: adjacency of vertex " + std::to_string(u) +
                 " differs");
      return report;
    }
  }
  return report;
}

}  // namespace lhg
