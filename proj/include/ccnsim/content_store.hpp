// Content Store: the router cache, bounded entry count, LRU replacement.
#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <optional>

#include "ccnsim/name.hpp"
#include "ccnsim/packet.hpp"

namespace ccnsim {

struct content_record {
  content_name name;
  std::uint64_t total_size = 0;  // bytes
  std::uint64_t chunk_bytes = 0;
  std::uint32_t chunk_count = 1;
  sim_time inserted_at = 0.0;
};

class content_store {
 public:
  explicit content_store(std::size_t capacity) : capacity_(capacity) {}

  std::size_t size() const { return index_.size(); }
  std::size_t capacity() const { return capacity_; }

  // A hit is a stored record whose name has `name` as a prefix; an exact
  // match wins, otherwise the lexicographically first covering record. A hit
  // refreshes the record's recency.
  std::optional<content_record> lookup(const content_name& name) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      for (auto scan = index_.begin(); scan != index_.end(); ++scan) {
        if (is_prefix_of(name, scan->first)) {
          it = scan;
          break;
        }
      }
    }
    if (it == index_.end()) return std::nullopt;
    recency_.splice(recency_.end(), recency_, it->second.order);
    return it->second.record;
  }

  // Inserts or updates in place; returns the evicted record when the insert
  // pushed the store past capacity.
  std::optional<content_record> insert(content_record record) {
    auto it = index_.find(record.name);
    if (it != index_.end()) {
      it->second.record = std::move(record);
      recency_.splice(recency_.end(), recency_, it->second.order);
      return std::nullopt;
    }
    recency_.push_back(record.name);
    auto order = std::prev(recency_.end());
    index_.emplace(record.name, entry{std::move(record), order});
    if (index_.size() <= capacity_) return std::nullopt;
    content_name victim = recency_.front();
    recency_.pop_front();
    auto vit = index_.find(victim);
    content_record evicted = std::move(vit->second.record);
    index_.erase(vit);
    return evicted;
  }

  // True when some stored record would satisfy `name`; does not touch
  // recency (used by the data-arrival duplicate check).
  bool covers(const content_name& name) const {
    if (index_.count(name)) return true;
    for (const auto& [stored, _] : index_)
      if (is_prefix_of(name, stored)) return true;
    return false;
  }

  std::vector<content_record> dump() const {
    std::vector<content_record> out;
    out.reserve(index_.size());
    for (const auto& [_, e] : index_) out.push_back(e.record);
    return out;
  }

 private:
  struct entry {
    content_record record;
    std::list<content_name>::iterator order;
  };

  std::size_t capacity_;
  std::map<content_name, entry> index_;
  std::list<content_name> recency_;  // front = least recently used
};

}  // namespace ccnsim
