#include "lhg/lhg_store.hpp"

namespace lhg {

namespace {

const EdgeBlock* as_block(const VertexPayload& p) {
  auto* blk = std::get_if<std::unique_ptr<EdgeBlock>>(&p);
  return blk ? blk->get() : nullptr;
}

EdgeBlock* as_block(VertexPayload& p) {
  auto* blk = std::get_if<std::unique_ptr<EdgeBlock>>(&p);
  return blk ? blk->get() : nullptr;
}

}  // namespace

bool LhgStore::find_edge(uint64_t u, uint64_t v) const {
  const VertexPayload* p = vindex_.find(u);
  if (!p) return false;
  if (const auto* inl = std::get_if<InlineEdge>(p)) return inl->neighbor == v;
  return as_block(*p)->find(v) != nullptr;
}

InsertResult LhgStore::insert_edge(uint64_t u, uint64_t v, double w) {
  VertexPayload* p = vindex_.find(u);
  if (!p) {
    vindex_.insert(u, VertexPayload(InlineEdge{v, w}));
    ++edge_count_;
    return InsertResult::Inserted;
  }
  if (auto* inl = std::get_if<InlineEdge>(p)) {
    if (inl->neighbor == v) {
      inl->weight = w;
      return InsertResult::Updated;
    }
    auto blk = std::make_unique<EdgeBlock>(inl->neighbor, inl->weight, v, w,
                                           cfg_.degree_threshold, cfg_.index);
    block_bytes_ += blk->memory_bytes();
    *p = std::move(blk);
    ++edge_count_;
    return InsertResult::Inserted;
  }
  EdgeBlock* blk = as_block(*p);
  size_t before = blk->memory_bytes();
  InsertResult r = blk->insert(v, w, cfg_.degree_threshold, cfg_.index);
  block_bytes_ += blk->memory_bytes() - before;
  if (r == InsertResult::Inserted) ++edge_count_;
  return r;
}

RemoveResult LhgStore::delete_edge(uint64_t u, uint64_t v) {
  VertexPayload* p = vindex_.find(u);
  if (!p) return RemoveResult::Absent;
  if (const auto* inl = std::get_if<InlineEdge>(p)) {
    if (inl->neighbor != v) return RemoveResult::Absent;
    vindex_.remove(u);
    --edge_count_;
    return RemoveResult::Removed;
  }
  // Blocks persist at any degree; only inline vertices disappear.
  if (!as_block(*p)->remove(v)) return RemoveResult::Absent;
  --edge_count_;
  return RemoveResult::Removed;
}

uint64_t LhgStore::degree(uint64_t u) const {
  const VertexPayload* p = vindex_.find(u);
  if (!p) return 0;
  if (std::holds_alternative<InlineEdge>(*p)) return 1;
  return as_block(*p)->degree();
}

void LhgStore::for_each_neighbor(uint64_t u, const NeighborFn& fn) const {
  const VertexPayload* p = vindex_.find(u);
  if (!p) return;
  if (const auto* inl = std::get_if<InlineEdge>(p)) {
    fn(inl->neighbor, inl->weight);
    return;
  }
  as_block(*p)->for_each(fn);
}

void LhgStore::for_each_vertex(const VertexFn& fn) const {
  vindex_.for_each([&](const uint64_t& u, const VertexPayload&) { fn(u); });
}

size_t LhgStore::memory_bytes() const {
  return sizeof(LhgStore) + vindex_.memory_bytes() + block_bytes_;
}

LhgStore::VertexLayout LhgStore::vertex_layout(uint64_t u) const {
  const VertexPayload* p = vindex_.find(u);
  if (!p) return VertexLayout::Unknown;
  if (std::holds_alternative<InlineEdge>(*p)) return VertexLayout::Inline;
  return as_block(*p)->layout() == EdgeBlock::Layout::Learned
             ? VertexLayout::LearnedBlock
             : VertexLayout::ArrayBlock;
}

const EdgeBlock* LhgStore::block(uint64_t u) const {
  const VertexPayload* p = vindex_.find(u);
  return p ? as_block(*p) : nullptr;
}

}  // namespace lhg
