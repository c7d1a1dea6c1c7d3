#pragma once

// Trivially correct adjacency-map store. Ground truth for the other two,
// no performance claims.

#include <map>

#include "lhg/graph_store.hpp"

namespace lhg {

class OracleStore final : public GraphStore {
 public:
  bool find_edge(uint64_t u, uint64_t v) const override;
  InsertResult insert_edge(uint64_t u, uint64_t v, double w) override;
  RemoveResult delete_edge(uint64_t u, uint64_t v) override;

  uint64_t degree(uint64_t u) const override;
  void for_each_neighbor(uint64_t u, const NeighborFn& fn) const override;
  void for_each_vertex(const VertexFn& fn) const override;

  uint64_t vertex_count() const override { return adjacency_.size(); }
  uint64_t edge_count() const override { return edge_count_; }
  size_t memory_bytes() const override;
  StoreKind kind() const override { return StoreKind::Oracle; }

 private:
  std::map<uint64_t, std::map<uint64_t, double>> adjacency_;
  uint64_t edge_count_ = 0;
};

}  // namespace lhg
