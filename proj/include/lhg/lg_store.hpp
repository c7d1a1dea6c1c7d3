#pragma once

// Flat baseline: one learned index over composite (source, target) keys
// ordered lexicographically, so a vertex's edges occupy one contiguous
// key range and each entry carries the full 128-bit pair.

#include <cstdint>

#include "lhg/graph_store.hpp"

namespace lhg {

using EdgeKey = unsigned __int128;

constexpr EdgeKey make_edge_key(uint64_t u, uint64_t v) {
  return (static_cast<EdgeKey>(u) << 64) | v;
}

constexpr uint64_t edge_key_source(EdgeKey k) {
  return static_cast<uint64_t>(k >> 64);
}

constexpr uint64_t edge_key_target(EdgeKey k) {
  return static_cast<uint64_t>(k);
}

class LgStore final : public GraphStore {
 public:
  explicit LgStore(StoreConfig cfg = {}) : index_(cfg.index) {}

  bool find_edge(uint64_t u, uint64_t v) const override;
  InsertResult insert_edge(uint64_t u, uint64_t v, double w) override;
  RemoveResult delete_edge(uint64_t u, uint64_t v) override;

  uint64_t degree(uint64_t u) const override;
  void for_each_neighbor(uint64_t u, const NeighborFn& fn) const override;
  void for_each_vertex(const VertexFn& fn) const override;

  uint64_t vertex_count() const override { return vertex_count_; }
  uint64_t edge_count() const override { return index_.size(); }
  size_t memory_bytes() const override;
  StoreKind kind() const override { return StoreKind::Lg; }

  const LearnedIndex<EdgeKey, double>& index() const { return index_; }

 private:
  bool has_vertex(uint64_t u) const;

  LearnedIndex<EdgeKey, double> index_;
  uint64_t vertex_count_ = 0;
};

}  // namespace lhg
