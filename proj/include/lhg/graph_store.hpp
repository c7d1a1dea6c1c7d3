#pragma once

// Common surface of the three edge stores. Analytics, workloads and the
// equivalence tests are written against this interface only.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lhg/learned_index.hpp"

namespace lhg {

enum class RemoveResult { Removed, Absent };

enum class StoreKind { Lhg, Lg, Oracle };

const char* to_string(StoreKind kind);
StoreKind parse_store_kind(const std::string& name);

struct StoreConfig {
  size_t degree_threshold = 60;
  IndexConfig index;
};

using NeighborFn = std::function<void(uint64_t, double)>;
using VertexFn = std::function<void(uint64_t)>;

class GraphStore {
 public:
  virtual ~GraphStore() = default;

  virtual bool find_edge(uint64_t u, uint64_t v) const = 0;
  virtual InsertResult insert_edge(uint64_t u, uint64_t v, double w) = 0;
  virtual RemoveResult delete_edge(uint64_t u, uint64_t v) = 0;

  virtual uint64_t degree(uint64_t u) const = 0;
  virtual void for_each_neighbor(uint64_t u, const NeighborFn& fn) const = 0;
  // Visits vertices in increasing ID order.
  virtual void for_each_vertex(const VertexFn& fn) const = 0;

  virtual uint64_t vertex_count() const = 0;
  virtual uint64_t edge_count() const = 0;
  virtual size_t memory_bytes() const = 0;
  virtual StoreKind kind() const = 0;

  std::vector<std::pair<uint64_t, double>> neighbors(uint64_t u) const;
  std::vector<uint64_t> vertex_ids() const;
};

std::unique_ptr<GraphStore> make_store(StoreKind kind,
                                       const StoreConfig& cfg = {});

}  // namespace lhg
