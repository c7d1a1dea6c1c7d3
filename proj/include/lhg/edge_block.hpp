#pragma once

// Per-vertex edge container. Low-degree vertices keep their neighbors in
// a small unsorted array scanned linearly; once the degree reaches the
// promotion threshold the block migrates to a learned index keyed by
// neighbor id with the edge weight as payload. Promotion is one-way.

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "lhg/learned_index.hpp"

namespace lhg {

using EdgeIndex = LearnedIndex<uint64_t, double>;

class UnsortedArray {
 public:
  static constexpr size_t kInitialCapacity = 4;

  double* find(uint64_t neighbor);
  const double* find(uint64_t neighbor) const {
    return const_cast<UnsortedArray*>(this)->find(neighbor);
  }
  InsertResult upsert(uint64_t neighbor, double weight);
  bool remove(uint64_t neighbor);

  void for_each(const std::function<void(uint64_t, double)>& fn) const;
  std::vector<std::pair<uint64_t, double>> sorted_entries() const;

  size_t used() const { return used_; }
  size_t max_pos() const { return max_pos_; }
  size_t capacity() const { return neighbors_.size(); }
  size_t memory_bytes() const;
  void release();

 private:
  std::vector<uint64_t> neighbors_;
  std::vector<double> weights_;
  std::vector<uint8_t> live_;
  size_t used_ = 0;
  size_t max_pos_ = 0;  // one past the highest slot ever occupied
};

class EdgeBlock {
 public:
  enum class Layout { Array, Learned };

  // A block always starts from an inline edge joined by a second one.
  EdgeBlock(uint64_t n0, double w0, uint64_t n1, double w1, size_t threshold,
            const IndexConfig& cfg);

  const double* find(uint64_t neighbor) const;
  InsertResult insert(uint64_t neighbor, double weight, size_t threshold,
                      const IndexConfig& cfg);
  bool remove(uint64_t neighbor);

  // Migrates Array -> Learned. Throws std::logic_error when already
  // migrated.
  void promote(const IndexConfig& cfg);

  void for_each(const std::function<void(uint64_t, double)>& fn) const;

  size_t degree() const { return degree_; }
  Layout layout() const { return layout_; }
  size_t memory_bytes() const;

 private:
  size_t degree_ = 0;
  Layout layout_ = Layout::Array;
  UnsortedArray array_;
  std::unique_ptr<EdgeIndex> learned_;
};

}  // namespace lhg
