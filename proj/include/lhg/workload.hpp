#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lhg/edge_list.hpp"
#include "lhg/graph_store.hpp"

namespace lhg {

struct SyntheticGraphSpec {
  uint64_t vertex_count = 0;
  uint64_t edge_count = 0;
  double skew_exponent = 2.0;
  uint64_t seed = 1;
};

// Deterministic simple directed graph whose out-degree distribution follows
// a discrete power law with the given exponent: vertex i gets a degree quota
// proportional to (i+1)^-exponent, capped at vertex_count-1, with the
// remainder spread by largest fractional part and then round-robin. No
// self-loops, no duplicate edges.
std::vector<WeightedEdge> generate_skewed_graph(const SyntheticGraphSpec& spec);

// Draws ranks in [0, n) with probability proportional to (rank+1)^-exponent.
class ZipfSampler {
 public:
  ZipfSampler(uint64_t n, double exponent);
  uint64_t operator()(std::mt19937_64& rng) const;

 private:
  std::vector<double> cdf_;
};

enum class WorkloadKind { A, B, C };
enum class ReadTarget { ExistingEdge, Mixed };

WorkloadKind parse_workload_kind(const std::string& name);
std::string to_string(WorkloadKind kind);

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::A;
  // 0 picks the kind's natural size: |edges| for A and C, 2|edges| for B.
  // Kind A always replays every edge exactly once regardless of op_count.
  uint64_t op_count = 0;
  ReadTarget read_target = ReadTarget::ExistingEdge;
  uint64_t seed = 1;
  // Appends this fraction of extra delete ops after the base sequence.
  double delete_fraction = 0.0;
};

enum class OpKind : uint8_t { Insert, Read, Delete };

struct Operation {
  OpKind kind;
  uint64_t u;
  uint64_t v;
  double w;

  friend bool operator==(const Operation&, const Operation&) = default;
};

// Kind A: every edge once, as inserts, in seeded-random order.
// Kind B: interleaved inserts and reads; each read probes an edge inserted
//         at a lower index (or, for Mixed, a coin-flip between that and an
//         edge absent from the dataset).
// Kind C: reads only, over the edge set the store was preloaded with.
std::vector<Operation> build_workload(const std::vector<WeightedEdge>& edges,
                                      const WorkloadSpec& spec);

void preload(GraphStore& store, const std::vector<WeightedEdge>& edges);

struct RunDigest {
  uint64_t true_reads = 0;
  uint64_t edge_count = 0;
  uint64_t vertex_count = 0;  // vertices with degree > 0

  friend bool operator==(const RunDigest&, const RunDigest&) = default;
};

struct RunMetrics {
  double ops_per_second = 0.0;
  uint64_t p50_ns = 0;
  uint64_t p99_ns = 0;
  uint64_t memory_bytes = 0;
  double wall_time_s = 0.0;
  RunDigest digest;
};

// Replays ops in order. Latency percentiles come from a sample of at most
// ~10k ops so the clock does not distort throughput on long runs.
RunMetrics run_workload(GraphStore& store, const std::vector<Operation>& ops);

struct MicrobenchRow {
  uint64_t n = 0;
  std::string structure;  // "array" or "learned"
  std::string op;         // "lookup" or "insert"
  double mean_ns = 0.0;
};

// Mean lookup and insert latency for an unsorted edge array of n entries
// versus a learned index of n entries, per size. Keys are deterministic for
// a fixed seed; one warmup repetition precedes the timed ones.
std::vector<MicrobenchRow> crossover_microbench(
    const std::vector<uint64_t>& sizes, uint64_t trials, uint64_t seed);

struct SweepRow {
  uint64_t threshold = 0;
  RunMetrics metrics;
  double pagerank_s = 0.0;
  double wcc_s = 0.0;
};

struct SweepOptions {
  WorkloadSpec workload;
  bool run_kernels = false;
  size_t pagerank_iterations = 10;
};

// Rebuilds a hybrid store per threshold and replays the identical operation
// sequence against each, so digests must agree across rows.
std::vector<SweepRow> sweep_threshold(const std::vector<WeightedEdge>& edges,
                                      const std::vector<uint64_t>& thresholds,
                                      const SweepOptions& opts);

// Mixed insert/find/delete traffic (2:1:1) over a Zipf-skewed vertex space.
std::vector<Operation> make_mixed_ops(uint64_t op_count, uint64_t vertex_space,
                                      double skew_exponent, uint64_t seed);

struct VerifyReport {
  bool ok = true;
  // Number of leading ops sufficient to reproduce the first divergence.
  uint64_t failing_prefix = 0;
  std::string detail;
};

// Replays seeded mixed traffic on the chosen store and on the oracle in
// lockstep, comparing every observation. corrupt_at (a test hook) silently
// drops every store-side mutation from that op index on so the divergence
// machinery can be exercised; leave it at UINT64_MAX for a real check.
VerifyReport verify_store(StoreKind kind, uint64_t op_count,
                          uint64_t vertex_space, uint64_t seed,
                          const StoreConfig& cfg = {},
                          uint64_t corrupt_at = UINT64_MAX);

}  // namespace lhg
