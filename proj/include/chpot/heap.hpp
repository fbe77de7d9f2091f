#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

#include "chpot/types.hpp"

namespace chpot {

/// Addressable 4-ary min-heap over node ids. Equal keys are ordered by node id,
/// which makes every search built on it deterministic.
class MinIdHeap {
 public:
  explicit MinIdHeap(NodeId id_count = 0) : pos_(id_count, kAbsent) {}

  void resize(NodeId id_count) {
    clear();
    pos_.assign(id_count, kAbsent);
  }

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  bool contains(NodeId id) const noexcept { return pos_[id] != kAbsent; }
  Weight key(NodeId id) const noexcept { return heap_[pos_[id]].key; }

  NodeId top_id() const noexcept { return heap_.front().id; }
  Weight top_key() const noexcept { return heap_.front().key; }

  void push(NodeId id, Weight key) {
    assert(!contains(id));
    pos_[id] = static_cast<std::uint32_t>(heap_.size());
    heap_.push_back({key, id});
    sift_up(pos_[id]);
  }

  void decrease_key(NodeId id, Weight key) {
    assert(contains(id) && key <= heap_[pos_[id]].key);
    heap_[pos_[id]].key = key;
    sift_up(pos_[id]);
  }

  /// push or decrease_key, whichever applies. Returns false if the key did not drop.
  bool push_or_decrease(NodeId id, Weight key) {
    if (!contains(id)) {
      push(id, key);
      return true;
    }
    if (key >= heap_[pos_[id]].key) return false;
    decrease_key(id, key);
    return true;
  }

  std::pair<NodeId, Weight> pop() {
    const Entry top = heap_.front();
    pos_[top.id] = kAbsent;
    const Entry last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_.front() = last;
      pos_[last.id] = 0;
      sift_down(0);
    }
    return {top.id, top.key};
  }

  void clear() {
    for (const Entry& e : heap_) pos_[e.id] = kAbsent;
    heap_.clear();
  }

 private:
  struct Entry {
    Weight key;
    NodeId id;
    bool operator<(const Entry& o) const noexcept { return key != o.key ? key < o.key : id < o.id; }
  };
  static constexpr std::uint32_t kAbsent = UINT32_MAX;
  static constexpr std::uint32_t kArity = 4;

  void place(std::uint32_t i, const Entry& e) {
    heap_[i] = e;
    pos_[e.id] = i;
  }

  void sift_up(std::uint32_t i) {
    const Entry e = heap_[i];
    while (i > 0) {
      const std::uint32_t parent = (i - 1) / kArity;
      if (!(e < heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, e);
  }

  void sift_down(std::uint32_t i) {
    const Entry e = heap_[i];
    const auto n = static_cast<std::uint32_t>(heap_.size());
    for (;;) {
      const std::uint32_t first = i * kArity + 1;
      if (first >= n) break;
      std::uint32_t best = first;
      const std::uint32_t end = first + kArity < n ? first + kArity : n;
      for (std::uint32_t c = first + 1; c < end; ++c)
        if (heap_[c] < heap_[best]) best = c;
      if (!(heap_[best] < e)) break;
      place(i, heap_[best]);
      i = best;
    }
    place(i, e);
  }

  std::vector<Entry> heap_;
  std::vector<std::uint32_t> pos_;
};

}  // namespace chpot
