#pragma once

// Two-level degree-aware store. The vertex index is a learned index over
// vertex IDs; a vertex with a single edge keeps it inline in the payload,
// anything larger owns an EdgeBlock that starts as an unsorted array and
// promotes itself to a per-vertex learned index at the degree threshold.

#include <cstdint>
#include <memory>
#include <variant>

#include "lhg/edge_block.hpp"
#include "lhg/graph_store.hpp"

namespace lhg {

struct InlineEdge {
  uint64_t neighbor = 0;
  double weight = 0.0;
};

using VertexPayload = std::variant<InlineEdge, std::unique_ptr<EdgeBlock>>;
using VertexIndex = LearnedIndex<uint64_t, VertexPayload>;

class LhgStore final : public GraphStore {
 public:
  explicit LhgStore(StoreConfig cfg = {}) : cfg_(cfg), vindex_(cfg.index) {}

  bool find_edge(uint64_t u, uint64_t v) const override;
  InsertResult insert_edge(uint64_t u, uint64_t v, double w) override;
  RemoveResult delete_edge(uint64_t u, uint64_t v) override;

  uint64_t degree(uint64_t u) const override;
  void for_each_neighbor(uint64_t u, const NeighborFn& fn) const override;
  void for_each_vertex(const VertexFn& fn) const override;

  uint64_t vertex_count() const override { return vindex_.size(); }
  uint64_t edge_count() const override { return edge_count_; }
  size_t memory_bytes() const override;
  StoreKind kind() const override { return StoreKind::Lhg; }

  size_t threshold() const { return cfg_.degree_threshold; }

  // Inspection hooks for tests.
  enum class VertexLayout { Unknown, Inline, ArrayBlock, LearnedBlock };
  VertexLayout vertex_layout(uint64_t u) const;
  const EdgeBlock* block(uint64_t u) const;
  const VertexIndex& vertex_index() const { return vindex_; }

 private:
  StoreConfig cfg_;
  VertexIndex vindex_;
  uint64_t edge_count_ = 0;
  size_t block_bytes_ = 0;
};

}  // namespace lhg
