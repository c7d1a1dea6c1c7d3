#pragma once

// Five kernels over the store interface. Results are keyed by vertex ID
// over the vertex universe (every ID appearing as a source or a target).
// All kernels are deterministic and store-independent: vertices are
// processed in ascending ID order regardless of the backing store.

#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <vector>

#include "lhg/graph_store.hpp"

namespace lhg {

inline constexpr uint64_t kUnreachedLevel =
    std::numeric_limits<uint64_t>::max();
inline constexpr double kUnreachedDistance =
    std::numeric_limits<double>::infinity();

// Sorted union of source and target vertex IDs.
std::vector<uint64_t> vertex_universe(const GraphStore& store);

std::map<uint64_t, uint64_t> bfs(const GraphStore& store, uint64_t source);

std::map<uint64_t, double> pagerank(const GraphStore& store,
                                    size_t iterations = 20,
                                    double damping = 0.85);

std::map<uint64_t, double> lcc(const GraphStore& store,
                               unsigned parallelism = 1);

std::map<uint64_t, uint64_t> wcc(const GraphStore& store);

std::map<uint64_t, double> sssp(const GraphStore& store, uint64_t source);

// Line-oriented "vertex<TAB>value" serialization for diffing.
void write_results(std::ostream& os, const std::map<uint64_t, uint64_t>& r);
void write_results(std::ostream& os, const std::map<uint64_t, double>& r);

}  // namespace lhg
