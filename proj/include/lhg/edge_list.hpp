#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lhg {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightedEdge {
  uint64_t u = 0;
  uint64_t v = 0;
  double w = 1.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Text format: one `u v [w]` edge per line; `#` starts a comment. A missing
// weight column reads as 1.0, and unweighted mode ignores the column outright.
// Undirected mode emits each non-loop line in both directions.
std::vector<WeightedEdge> load_edge_list(const std::string& path,
                                         bool undirected = false,
                                         bool weighted = true);

void write_edge_list(const std::string& path,
                     const std::vector<WeightedEdge>& edges);

}  // namespace lhg
