#include "lhg/edge_block.hpp"

#include <algorithm>
#include <stdexcept>

namespace lhg {

double* UnsortedArray::find(uint64_t neighbor) {
  for (size_t i = 0; i < max_pos_; ++i) {
    if (live_[i] && neighbors_[i] == neighbor) return &weights_[i];
  }
  return nullptr;
}

InsertResult UnsortedArray::upsert(uint64_t neighbor, double weight) {
  size_t hole = max_pos_;
  for (size_t i = 0; i < max_pos_; ++i) {
    if (!live_[i]) {
      if (hole == max_pos_) hole = i;
      continue;
    }
    if (neighbors_[i] == neighbor) {
      weights_[i] = weight;
      return InsertResult::Updated;
    }
  }
  if (hole == max_pos_) {
    if (max_pos_ == neighbors_.size()) {
      size_t cap = std::max(kInitialCapacity, neighbors_.size() * 2);
      neighbors_.resize(cap);
      weights_.resize(cap);
      live_.resize(cap, 0);
    }
    ++max_pos_;
  }
  neighbors_[hole] = neighbor;
  weights_[hole] = weight;
  live_[hole] = 1;
  ++used_;
  return InsertResult::Inserted;
}

bool UnsortedArray::remove(uint64_t neighbor) {
  for (size_t i = 0; i < max_pos_; ++i) {
    if (!live_[i] || neighbors_[i] != neighbor) continue;
    live_[i] = 0;
    --used_;
    while (max_pos_ > 0 && !live_[max_pos_ - 1]) --max_pos_;
    return true;
  }
  return false;
}

void UnsortedArray::for_each(
    const std::function<void(uint64_t, double)>& fn) const {
  for (size_t i = 0; i < max_pos_; ++i) {
    if (live_[i]) fn(neighbors_[i], weights_[i]);
  }
}

std::vector<std::pair<uint64_t, double>> UnsortedArray::sorted_entries() const {
  std::vector<std::pair<uint64_t, double>> out;
  out.reserve(used_);
  for_each([&](uint64_t v, double w) { out.emplace_back(v, w); });
  std::sort(out.begin(), out.end());
  return out;
}

size_t UnsortedArray::memory_bytes() const {
  return neighbors_.size() * (sizeof(uint64_t) + sizeof(double) + 1);
}

void UnsortedArray::release() {
  neighbors_ = {};
  weights_ = {};
  live_ = {};
  used_ = 0;
  max_pos_ = 0;
}

EdgeBlock::EdgeBlock(uint64_t n0, double w0, uint64_t n1, double w1,
                     size_t threshold, const IndexConfig& cfg) {
  array_.upsert(n0, w0);
  array_.upsert(n1, w1);
  degree_ = array_.used();
  if (degree_ >= threshold) promote(cfg);
}

const double* EdgeBlock::find(uint64_t neighbor) const {
  if (layout_ == Layout::Learned) return learned_->find(neighbor);
  return array_.find(neighbor);
}

InsertResult EdgeBlock::insert(uint64_t neighbor, double weight,
                               size_t threshold, const IndexConfig& cfg) {
  if (layout_ == Layout::Learned) {
    InsertResult r = learned_->insert(neighbor, weight);
    if (r == InsertResult::Inserted) ++degree_;
    return r;
  }
  if (double* w = array_.find(neighbor)) {
    *w = weight;
    return InsertResult::Updated;
  }
  if (degree_ + 1 >= threshold) {
    promote(cfg);
    learned_->insert(neighbor, weight);
  } else {
    array_.upsert(neighbor, weight);
  }
  ++degree_;
  return InsertResult::Inserted;
}

bool EdgeBlock::remove(uint64_t neighbor) {
  bool removed = layout_ == Layout::Learned ? learned_->remove(neighbor)
                                            : array_.remove(neighbor);
  if (removed) --degree_;
  return removed;
}

void EdgeBlock::promote(const IndexConfig& cfg) {
  if (layout_ == Layout::Learned) {
    throw std::logic_error("edge block is already promoted");
  }
  learned_ = std::make_unique<EdgeIndex>(
      EdgeIndex::bulk_load(array_.sorted_entries(), cfg));
  array_.release();
  layout_ = Layout::Learned;
}

void EdgeBlock::for_each(
    const std::function<void(uint64_t, double)>& fn) const {
  if (layout_ == Layout::Learned) {
    learned_->for_each([&](const uint64_t& v, const double& w) { fn(v, w); });
  } else {
    array_.for_each(fn);
  }
}

size_t EdgeBlock::memory_bytes() const {
  size_t bytes = sizeof(EdgeBlock) + array_.memory_bytes();
  if (learned_) bytes += learned_->memory_bytes();
  return bytes;
}

}  // namespace lhg
