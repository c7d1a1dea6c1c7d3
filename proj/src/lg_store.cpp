#include "lhg/lg_store.hpp"

namespace lhg {

bool LgStore::find_edge(uint64_t u, uint64_t v) const {
  return index_.contains(make_edge_key(u, v));
}

bool LgStore::has_vertex(uint64_t u) const {
  bool found = false;
  index_.for_each_from(make_edge_key(u, 0),
                       [&](const EdgeKey& k, const double&) {
                         found = edge_key_source(k) == u;
                         return false;
                       });
  return found;
}

InsertResult LgStore::insert_edge(uint64_t u, uint64_t v, double w) {
  bool known = has_vertex(u);
  InsertResult r = index_.insert(make_edge_key(u, v), w);
  if (r == InsertResult::Inserted && !known) ++vertex_count_;
  return r;
}

RemoveResult LgStore::delete_edge(uint64_t u, uint64_t v) {
  if (!index_.remove(make_edge_key(u, v))) return RemoveResult::Absent;
  if (!has_vertex(u)) --vertex_count_;
  return RemoveResult::Removed;
}

uint64_t LgStore::degree(uint64_t u) const {
  uint64_t count = 0;
  index_.for_each_from(make_edge_key(u, 0),
                       [&](const EdgeKey& k, const double&) {
                         if (edge_key_source(k) != u) return false;
                         ++count;
                         return true;
                       });
  return count;
}

void LgStore::for_each_neighbor(uint64_t u, const NeighborFn& fn) const {
  index_.for_each_from(make_edge_key(u, 0),
                       [&](const EdgeKey& k, const double& w) {
                         if (edge_key_source(k) != u) return false;
                         fn(edge_key_target(k), w);
                         return true;
                       });
}

void LgStore::for_each_vertex(const VertexFn& fn) const {
  bool any = false;
  uint64_t current = 0;
  index_.for_each([&](const EdgeKey& k, const double&) {
    uint64_t u = edge_key_source(k);
    if (!any || u != current) {
      fn(u);
      current = u;
      any = true;
    }
  });
}

size_t LgStore::memory_bytes() const {
  return sizeof(LgStore) + index_.memory_bytes();
}

}  // namespace lhg
