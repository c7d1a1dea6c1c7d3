#pragma once

// Updatable learned index: a tree of linear models over gapped arrays.
// Internal nodes predict a child slot from the key and correct locally
// against the child boundary keys. Leaves predict a slot in a gapped
// array and correct with exponential search. Every gap slot carries a
// copy of the key of the nearest occupied slot to its right (trailing
// gaps hold the maximum key value), so the raw slot array is always
// non-decreasing, plain lower_bound works on it, and the insertion point
// for an absent key is the head of a gap run whenever one is free.
// Deletions leave the key behind as a shadow. Keys must be unsigned.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace lhg {

struct IndexConfig {
  double density_upper = 0.8;
  size_t expansion_factor = 2;
  size_t max_leaf_capacity = 4096;
  size_t fanout = 16;
  size_t min_leaf_capacity = 8;
};

enum class InsertResult { Inserted, Updated };

struct LinearModel {
  double slope = 0.0;
  double intercept = 0.0;

  // Least-squares fit of key -> i * capacity / n over the sorted keys.
  template <typename Key>
  static LinearModel train(const Key* keys, size_t n, size_t capacity) {
    LinearModel m;
    if (n < 2 || capacity == 0) return m;
    double mean_x = 0.0, mean_y = 0.0;
    double y_step = static_cast<double>(capacity) / static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
      mean_x += static_cast<double>(keys[i]);
      mean_y += static_cast<double>(i) * y_step;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double dx = static_cast<double>(keys[i]) - mean_x;
      double dy = static_cast<double>(i) * y_step - mean_y;
      sxx += dx * dx;
      sxy += dx * dy;
    }
    if (sxx > 0.0) {
      m.slope = sxy / sxx;
      m.intercept = mean_y - m.slope * mean_x;
    }
    return m;
  }

  template <typename Key>
  static LinearModel train(const std::vector<Key>& keys, size_t capacity) {
    return train(keys.data(), keys.size(), capacity);
  }

  // Predicted slot, clamped to [0, limit). Total for any finite key.
  template <typename Key>
  size_t predict(Key key, size_t limit) const {
    double v = slope * static_cast<double>(key) + intercept;
    if (std::isnan(v) || v <= 0.0 || limit <= 1) return 0;
    double top = static_cast<double>(limit - 1);
    if (v >= top) return limit - 1;
    return static_cast<size_t>(v + 0.5);
  }
};

template <typename Key, typename Payload>
class LearnedIndex {
 public:
  using key_type = Key;
  using payload_type = Payload;

  explicit LearnedIndex(IndexConfig cfg = {}) : cfg_(check_config(cfg)) {
    root_ = make_leaf(cfg_.min_leaf_capacity);
  }

  LearnedIndex(LearnedIndex&&) noexcept = default;
  LearnedIndex& operator=(LearnedIndex&&) noexcept = default;

  // Builds a balanced tree from strictly increasing keys in one pass.
  static LearnedIndex bulk_load(std::vector<std::pair<Key, Payload>> pairs,
                                IndexConfig cfg = {}) {
    for (size_t i = 1; i < pairs.size(); ++i) {
      if (!(pairs[i - 1].first < pairs[i].first)) {
        throw std::invalid_argument(
            "bulk_load requires strictly increasing keys");
      }
    }
    LearnedIndex idx(cfg);
    if (pairs.empty()) return idx;
    idx.bytes_ = base_footprint();
    idx.root_.reset();
    idx.build_from_sorted(pairs);
    idx.size_ = pairs.size();
    return idx;
  }

  InsertResult insert(Key key, Payload payload) {
    std::optional<Split> split;
    InsertResult r = insert_into(root_.get(), key, std::move(payload), split);
    if (split) {
      auto top = std::make_unique<InternalNode>();
      top->bounds = {Key{}, split->key};
      top->kids.push_back(std::move(root_));
      top->kids.push_back(std::move(split->right));
      top->model = LinearModel::train(top->bounds, top->kids.size());
      bytes_ += internal_footprint(top->kids.size());
      root_ = std::move(top);
    }
    return r;
  }

  Payload* find(Key key) {
    LeafNode& lf = locate_leaf(key);
    size_t slot = find_slot(lf, key);
    return slot == kNoSlot ? nullptr : &lf.vals[slot];
  }

  const Payload* find(Key key) const {
    return const_cast<LearnedIndex*>(this)->find(key);
  }

  bool contains(Key key) const { return find(key) != nullptr; }

  // Leaves the key behind as a shadow so ordering is untouched.
  bool remove(Key key) {
    LeafNode& lf = locate_leaf(key);
    size_t slot = find_slot(lf, key);
    if (slot == kNoSlot) return false;
    lf.live[slot] = 0;
    lf.vals[slot] = Payload{};
    --lf.used;
    --size_;
    return true;
  }

  // In-order traversal. fn(key, payload) may return void, or bool with
  // false meaning stop.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const LeafNode* lf = leftmost(); lf; lf = lf->next) {
      if (!emit_leaf(*lf, 0, fn)) return;
    }
  }

  template <typename Fn>
  void for_each_from(Key lo, Fn&& fn) const {
    const LeafNode* lf = &const_cast<LearnedIndex*>(this)->locate_leaf(lo);
    size_t start = lower_bound_slot(*lf, lo);
    if (!emit_leaf(*lf, start, fn)) return;
    for (lf = lf->next; lf; lf = lf->next) {
      if (!emit_leaf(*lf, 0, fn)) return;
    }
  }

  // Visits keys in [lo, hi).
  template <typename Fn>
  void scan_range(Key lo, Key hi, Fn&& fn) const {
    if (hi < lo) throw std::invalid_argument("scan_range: lo > hi");
    for_each_from(lo, [&](const Key& k, const Payload& p) {
      if (!(k < hi)) return false;
      return invoke_entry(fn, k, p);
    });
  }

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  size_t memory_bytes() const { return bytes_; }
  const IndexConfig& config() const { return cfg_; }

  // Declared footprint formulas, shared with the accounting oracle.
  static constexpr size_t base_footprint() { return sizeof(LearnedIndex); }
  static constexpr size_t leaf_footprint(size_t capacity) {
    return sizeof(LeafNode) + capacity * (sizeof(Key) + sizeof(Payload) + 1);
  }
  static constexpr size_t internal_footprint(size_t children) {
    return sizeof(InternalNode) + children * (sizeof(Key) + sizeof(void*));
  }

  struct NodeStats {
    bool leaf;
    size_t depth;
    size_t capacity;  // slots for a leaf, children for an internal node
    size_t used;
  };

  template <typename Fn>
  void visit_nodes(Fn&& fn) const {
    visit_rec(root_.get(), 0, fn);
  }

  // Walks the whole tree and throws std::logic_error on any broken
  // structural invariant. Test hook, not used on hot paths.
  void validate() const {
    size_t total = 0;
    std::vector<const LeafNode*> order;
    validate_rec(root_.get(), std::nullopt, std::nullopt, total, order);
    if (total != size_) throw std::logic_error("validate: size mismatch");
    const LeafNode* lf = leftmost();
    for (const LeafNode* expect : order) {
      if (lf != expect) throw std::logic_error("validate: leaf chain broken");
      lf = lf->next;
    }
    if (lf) throw std::logic_error("validate: leaf chain too long");
  }

 private:
  static constexpr size_t kNoSlot = std::numeric_limits<size_t>::max();

  struct Node {
    explicit Node(bool l) : leaf(l) {}
    virtual ~Node() = default;
    bool leaf;
    LinearModel model;
  };

  struct LeafNode : Node {
    LeafNode() : Node(true) {}
    std::vector<Key> keys;
    std::vector<Payload> vals;
    std::vector<uint8_t> live;
    size_t used = 0;
    LeafNode* next = nullptr;
    size_t capacity() const { return keys.size(); }
  };

  struct InternalNode : Node {
    InternalNode() : Node(false) {}
    // bounds[i] is the lowest key routed to kids[i]; bounds[0] is a floor.
    std::vector<Key> bounds;
    std::vector<std::unique_ptr<Node>> kids;
  };

  struct Split {
    Key key;
    std::unique_ptr<Node> right;
  };

  static IndexConfig check_config(const IndexConfig& cfg) {
    if (cfg.density_upper <= 0.0 || cfg.density_upper > 1.0)
      throw std::invalid_argument("density_upper out of (0, 1]");
    if (cfg.expansion_factor < 2)
      throw std::invalid_argument("expansion_factor must be >= 2");
    if (cfg.fanout < 2) throw std::invalid_argument("fanout must be >= 2");
    if (cfg.min_leaf_capacity < 2 ||
        cfg.max_leaf_capacity < cfg.min_leaf_capacity)
      throw std::invalid_argument("bad leaf capacity bounds");
    return cfg;
  }

  static constexpr Key max_key() { return static_cast<Key>(~Key{0}); }

  std::unique_ptr<LeafNode> make_leaf(size_t capacity) {
    auto lf = std::make_unique<LeafNode>();
    lf->keys.assign(capacity, max_key());
    lf->vals.resize(capacity);
    lf->live.assign(capacity, 0);
    bytes_ += leaf_footprint(capacity);
    return lf;
  }

  // Smallest allowed capacity that keeps count entries under the density
  // bound with room to grow.
  size_t capacity_for(size_t count) const {
    size_t by_density = static_cast<size_t>(
        std::ceil(static_cast<double>(count) / cfg_.density_upper));
    size_t cap = std::max(count * cfg_.expansion_factor, by_density);
    cap = std::max(cap, cfg_.min_leaf_capacity);
    return std::min(cap, cfg_.max_leaf_capacity);
  }

  size_t route(const InternalNode& in, Key key) const {
    size_t n = in.kids.size();
    size_t idx = in.model.predict(key, n);
    while (idx > 0 && key < in.bounds[idx]) --idx;
    while (idx + 1 < n && !(key < in.bounds[idx + 1])) ++idx;
    return idx;
  }

  LeafNode& locate_leaf(Key key) {
    Node* n = root_.get();
    while (!n->leaf) {
      auto& in = static_cast<InternalNode&>(*n);
      n = in.kids[route(in, key)].get();
    }
    return static_cast<LeafNode&>(*n);
  }

  // First slot with keys[slot] >= key, found by exponential search out
  // from the model prediction. Returns capacity when every key is smaller.
  static size_t lower_bound_slot(const LeafNode& lf, Key key) {
    size_t cap = lf.capacity();
    size_t pos = lf.model.predict(key, cap);
    const Key* keys = lf.keys.data();
    if (!(keys[pos] < key)) {
      size_t off = 1;
      while (off <= pos && !(keys[pos - off] < key)) off <<= 1;
      size_t lo = off > pos ? 0 : pos - off;
      return std::lower_bound(keys + lo, keys + pos, key) - keys;
    }
    size_t off = 1;
    while (pos + off < cap && keys[pos + off] < key) off <<= 1;
    size_t hi = std::min(pos + off, cap);
    return std::lower_bound(keys + pos + 1, keys + hi, key) - keys;
  }

  // Occupied slot holding key, or kNoSlot. Skips tombstone shadows.
  static size_t find_slot(const LeafNode& lf, Key key) {
    size_t cap = lf.capacity();
    size_t slot = lower_bound_slot(lf, key);
    while (slot < cap && !(key < lf.keys[slot]) && !(lf.keys[slot] < key)) {
      if (lf.live[slot]) return slot;
      ++slot;
    }
    return kNoSlot;
  }

  static void move_slot(LeafNode& lf, size_t dst, size_t src) {
    lf.keys[dst] = lf.keys[src];
    lf.vals[dst] = std::move(lf.vals[src]);
    lf.live[dst] = lf.live[src];
  }

  // Places a new key at its lower-bound position, occupying a gap or
  // shifting the surrounding occupied run towards the nearest gap.
  void place_key(LeafNode& lf, Key key, Payload&& payload) {
    size_t cap = lf.capacity();
    size_t pos = lower_bound_slot(lf, key);
    size_t slot;
    if (pos == cap) {
      if (!lf.live[cap - 1]) {
        slot = cap - 1;
      } else {
        size_t gap = cap - 1;
        while (lf.live[gap - 1]) --gap;
        --gap;
        for (size_t i = gap; i + 1 <= cap - 1; ++i) move_slot(lf, i, i + 1);
        slot = cap - 1;
      }
    } else if (!lf.live[pos]) {
      slot = pos;
    } else {
      slot = kNoSlot;
      for (size_t d = 1; slot == kNoSlot; ++d) {
        if (pos + d < cap && !lf.live[pos + d]) {
          for (size_t i = pos + d; i > pos; --i) move_slot(lf, i, i - 1);
          slot = pos;
        } else if (d <= pos && !lf.live[pos - d]) {
          for (size_t i = pos - d; i + 1 <= pos - 1; ++i) move_slot(lf, i, i + 1);
          slot = pos - 1;
        }
      }
    }
    lf.keys[slot] = key;
    lf.vals[slot] = std::move(payload);
    lf.live[slot] = 1;
    ++lf.used;
    ++size_;
  }

  struct Extracted {
    std::vector<Key> keys;
    std::vector<Payload> vals;
  };

  static Extracted extract_live(LeafNode& lf) {
    Extracted out;
    out.keys.reserve(lf.used);
    out.vals.reserve(lf.used);
    for (size_t i = 0; i < lf.capacity(); ++i) {
      if (!lf.live[i]) continue;
      out.keys.push_back(lf.keys[i]);
      out.vals.push_back(std::move(lf.vals[i]));
    }
    return out;
  }

  // Retrains the model and lays entries out at their predicted slots,
  // bumping collisions to the next free slot while keeping enough room
  // on the right for the remainder. Gaps get shadow keys afterwards.
  void fill_leaf(LeafNode& lf, std::vector<Key>& keys,
                 std::vector<Payload>& vals, size_t from, size_t count,
                 size_t capacity) {
    size_t old_cap = lf.capacity();
    lf.keys.assign(capacity, Key{});
    std::vector<Payload> fresh(capacity);
    lf.vals.swap(fresh);
    lf.live.assign(capacity, 0);
    lf.model = LinearModel::train(keys.data() + from, count, capacity);
    size_t next = 0;
    for (size_t i = 0; i < count; ++i) {
      size_t slot = lf.model.predict(keys[from + i], capacity);
      slot = std::max(slot, next);
      slot = std::min(slot, capacity - (count - i));
      lf.keys[slot] = keys[from + i];
      lf.vals[slot] = std::move(vals[from + i]);
      lf.live[slot] = 1;
      next = slot + 1;
    }
    Key shadow = max_key();
    for (size_t i = capacity; i-- > 0;) {
      if (lf.live[i]) {
        shadow = lf.keys[i];
      } else {
        lf.keys[i] = shadow;
      }
    }
    lf.used = count;
    bytes_ += leaf_footprint(capacity);
    bytes_ -= leaf_footprint(old_cap);
  }

  void expand_leaf(LeafNode& lf) {
    Extracted e = extract_live(lf);
    fill_leaf(lf, e.keys, e.vals, 0, e.keys.size(),
              lf.capacity() * cfg_.expansion_factor);
  }

  Split split_leaf(LeafNode& lf) {
    Extracted e = extract_live(lf);
    size_t half = e.keys.size() / 2;
    size_t rest = e.keys.size() - half;
    auto right = make_leaf(capacity_for(rest));
    fill_leaf(*right, e.keys, e.vals, half, rest, right->capacity());
    Key split_key = e.keys[half];
    fill_leaf(lf, e.keys, e.vals, 0, half, capacity_for(half));
    right->next = lf.next;
    lf.next = right.get();
    return Split{split_key, std::move(right)};
  }

  Split split_internal(InternalNode& in) {
    size_t half = in.kids.size() / 2;
    auto right = std::make_unique<InternalNode>();
    right->bounds.assign(in.bounds.begin() + half, in.bounds.end());
    for (size_t i = half; i < in.kids.size(); ++i) {
      right->kids.push_back(std::move(in.kids[i]));
    }
    in.bounds.resize(half);
    in.kids.resize(half);
    in.model = LinearModel::train(in.bounds, in.kids.size());
    right->model = LinearModel::train(right->bounds, right->kids.size());
    bytes_ += internal_footprint(right->kids.size());
    bytes_ -= right->kids.size() * (sizeof(Key) + sizeof(void*));
    return Split{right->bounds.front(), std::move(right)};
  }

  InsertResult insert_into(Node* node, Key key, Payload&& payload,
                           std::optional<Split>& split_out) {
    if (node->leaf) {
      auto& lf = static_cast<LeafNode&>(*node);
      size_t slot = find_slot(lf, key);
      if (slot != kNoSlot) {
        lf.vals[slot] = std::move(payload);
        return InsertResult::Updated;
      }
      if (static_cast<double>(lf.used + 1) >
          cfg_.density_upper * static_cast<double>(lf.capacity())) {
        if (lf.capacity() * cfg_.expansion_factor <= cfg_.max_leaf_capacity) {
          expand_leaf(lf);
        } else {
          split_out = split_leaf(lf);
          if (!(key < split_out->key)) {
            place_key(static_cast<LeafNode&>(*split_out->right), key,
                      std::move(payload));
            return InsertResult::Inserted;
          }
        }
      }
      place_key(lf, key, std::move(payload));
      return InsertResult::Inserted;
    }
    auto& in = static_cast<InternalNode&>(*node);
    size_t idx = route(in, key);
    std::optional<Split> child_split;
    InsertResult r =
        insert_into(in.kids[idx].get(), key, std::move(payload), child_split);
    if (child_split) {
      in.bounds.insert(in.bounds.begin() + idx + 1, child_split->key);
      in.kids.insert(in.kids.begin() + idx + 1, std::move(child_split->right));
      bytes_ += sizeof(Key) + sizeof(void*);
      in.model = LinearModel::train(in.bounds, in.kids.size());
      if (in.kids.size() > cfg_.fanout) split_out = split_internal(in);
    }
    return r;
  }

  void build_from_sorted(std::vector<std::pair<Key, Payload>>& pairs) {
    size_t per_leaf = static_cast<size_t>(
        cfg_.density_upper * static_cast<double>(cfg_.max_leaf_capacity) /
        static_cast<double>(cfg_.expansion_factor));
    per_leaf = std::max<size_t>(1, per_leaf);
    std::vector<std::unique_ptr<Node>> level;
    std::vector<Key> firsts;
    LeafNode* prev = nullptr;
    for (size_t at = 0; at < pairs.size(); at += per_leaf) {
      size_t n = std::min(per_leaf, pairs.size() - at);
      std::vector<Key> ks(n);
      std::vector<Payload> vs(n);
      for (size_t i = 0; i < n; ++i) {
        ks[i] = pairs[at + i].first;
        vs[i] = std::move(pairs[at + i].second);
      }
      auto lf = make_leaf(capacity_for(n));
      fill_leaf(*lf, ks, vs, 0, n, lf->capacity());
      if (prev) prev->next = lf.get();
      prev = lf.get();
      firsts.push_back(ks.front());
      level.push_back(std::move(lf));
    }
    while (level.size() > 1) {
      std::vector<std::unique_ptr<Node>> up;
      std::vector<Key> up_firsts;
      for (size_t at = 0; at < level.size(); at += cfg_.fanout) {
        size_t n = std::min(cfg_.fanout, level.size() - at);
        auto in = std::make_unique<InternalNode>();
        in->bounds.assign(firsts.begin() + at, firsts.begin() + at + n);
        for (size_t i = 0; i < n; ++i) {
          in->kids.push_back(std::move(level[at + i]));
        }
        in->model = LinearModel::train(in->bounds, n);
        bytes_ += internal_footprint(n);
        up_firsts.push_back(in->bounds.front());
        up.push_back(std::move(in));
      }
      level.swap(up);
      firsts.swap(up_firsts);
    }
    root_ = std::move(level.front());
  }

  const LeafNode* leftmost() const {
    const Node* n = root_.get();
    while (!n->leaf) {
      n = static_cast<const InternalNode&>(*n).kids.front().get();
    }
    return &static_cast<const LeafNode&>(*n);
  }

  template <typename Fn>
  static bool invoke_entry(Fn& fn, const Key& k, const Payload& p) {
    if constexpr (std::is_void_v<
                      std::invoke_result_t<Fn&, const Key&, const Payload&>>) {
      fn(k, p);
      return true;
    } else {
      return fn(k, p);
    }
  }

  template <typename Fn>
  static bool emit_leaf(const LeafNode& lf, size_t start, Fn& fn) {
    for (size_t i = start; i < lf.capacity(); ++i) {
      if (lf.live[i] && !invoke_entry(fn, lf.keys[i], lf.vals[i])) return false;
    }
    return true;
  }

  template <typename Fn>
  void visit_rec(const Node* n, size_t depth, Fn& fn) const {
    if (n->leaf) {
      const auto& lf = static_cast<const LeafNode&>(*n);
      fn(NodeStats{true, depth, lf.capacity(), lf.used});
      return;
    }
    const auto& in = static_cast<const InternalNode&>(*n);
    fn(NodeStats{false, depth, in.kids.size(), in.kids.size()});
    for (const auto& kid : in.kids) visit_rec(kid.get(), depth + 1, fn);
  }

  void validate_rec(const Node* n, std::optional<Key> lo, std::optional<Key> hi,
                    size_t& total, std::vector<const LeafNode*>& order) const {
    if (n->leaf) {
      const auto& lf = static_cast<const LeafNode&>(*n);
      order.push_back(&lf);
      size_t live_count = 0;
      bool seen_live = false;
      Key prev_live{};
      for (size_t i = 0; i < lf.capacity(); ++i) {
        if (i > 0 && lf.keys[i] < lf.keys[i - 1])
          throw std::logic_error("validate: slot keys out of order");
        if (!lf.live[i]) continue;
        ++live_count;
        if (seen_live && !(prev_live < lf.keys[i]))
          throw std::logic_error("validate: duplicate live key");
        seen_live = true;
        prev_live = lf.keys[i];
        if (lo && lf.keys[i] < *lo)
          throw std::logic_error("validate: key below subtree bound");
        if (hi && !(lf.keys[i] < *hi))
          throw std::logic_error("validate: key above subtree bound");
      }
      if (live_count != lf.used)
        throw std::logic_error("validate: used count wrong");
      if (static_cast<double>(lf.used) >
          cfg_.density_upper * static_cast<double>(lf.capacity()))
        throw std::logic_error("validate: leaf density above bound");
      if (lf.capacity() > cfg_.max_leaf_capacity)
        throw std::logic_error("validate: leaf over max capacity");
      total += lf.used;
      return;
    }
    const auto& in = static_cast<const InternalNode&>(*n);
    if (in.kids.empty() || in.kids.size() != in.bounds.size())
      throw std::logic_error("validate: internal shape wrong");
    if (in.kids.size() > cfg_.fanout)
      throw std::logic_error("validate: internal over fanout");
    for (size_t i = 1; i < in.bounds.size(); ++i) {
      if (!(in.bounds[i - 1] < in.bounds[i]))
        throw std::logic_error("validate: bounds out of order");
    }
    for (size_t i = 0; i < in.kids.size(); ++i) {
      std::optional<Key> klo = (i == 0) ? lo : std::optional<Key>(in.bounds[i]);
      std::optional<Key> khi =
          (i + 1 < in.kids.size()) ? std::optional<Key>(in.bounds[i + 1]) : hi;
      validate_rec(in.kids[i].get(), klo, khi, total, order);
    }
  }

  IndexConfig cfg_;
  std::unique_ptr<Node> root_;
  size_t size_ = 0;
  size_t bytes_ = base_footprint();
};

}  // namespace lhg
