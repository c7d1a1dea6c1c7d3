#include "lhg/oracle_store.hpp"

namespace lhg {

bool OracleStore::find_edge(uint64_t u, uint64_t v) const {
  auto it = adjacency_.find(u);
  return it != adjacency_.end() && it->second.count(v) > 0;
}

InsertResult OracleStore::insert_edge(uint64_t u, uint64_t v, double w) {
  auto [it, inserted] = adjacency_[u].insert_or_assign(v, w);
  (void)it;
  if (inserted) ++edge_count_;
  return inserted ? InsertResult::Inserted : InsertResult::Updated;
}

RemoveResult OracleStore::delete_edge(uint64_t u, uint64_t v) {
  auto it = adjacency_.find(u);
  if (it == adjacency_.end() || it->second.erase(v) == 0) {
    return RemoveResult::Absent;
  }
  --edge_count_;
  if (it->second.empty()) adjacency_.erase(it);
  return RemoveResult::Removed;
}

uint64_t OracleStore::degree(uint64_t u) const {
  auto it = adjacency_.find(u);
  return it == adjacency_.end() ? 0 : it->second.size();
}

void OracleStore::for_each_neighbor(uint64_t u, const NeighborFn& fn) const {
  auto it = adjacency_.find(u);
  if (it == adjacency_.end()) return;
  for (const auto& [v, w] : it->second) fn(v, w);
}

void OracleStore::for_each_vertex(const VertexFn& fn) const {
  for (const auto& [u, nbrs] : adjacency_) fn(u);
}

size_t OracleStore::memory_bytes() const {
  // Nominal red-black-tree node costs; only used for reporting.
  constexpr size_t kNode = 4 * sizeof(void*);
  size_t bytes = sizeof(OracleStore);
  bytes += adjacency_.size() *
           (kNode + sizeof(uint64_t) + sizeof(std::map<uint64_t, double>));
  bytes += edge_count_ * (kNode + sizeof(uint64_t) + sizeof(double));
  return bytes;
}

}  // namespace lhg
