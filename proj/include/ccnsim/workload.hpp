// Random interest workload: `count` interests over [0, duration), consumer
// and content type chosen uniformly, item chosen uniformly from the type's
// pool. Fully determined by the seed.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ccnsim/name.hpp"
#include "ccnsim/rng.hpp"
#include "ccnsim/scenario.hpp"

namespace ccnsim {

struct workload_item {
  sim_time time = 0.0;
  face_id face = 0;
  content_name name;
};

struct workload {
  std::vector<workload_item> interests;  // ascending by time
  std::uint64_t seed = 0;
  std::uint32_t count = 0;
  double duration_s = 0.0;
};

inline workload generate_workload(std::uint64_t seed, std::uint32_t count, double duration_s,
                                  const std::vector<face_id>& consumers,
                                  const std::vector<catalog_entry>& catalog) {
  rng r(mix_seed(seed, 1));
  std::vector<workload_item> items;
  items.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    workload_item it;
    it.time = r.uniform01() * duration_s;
    it.face = consumers[r.below(consumers.size())];
    const catalog_entry& type = catalog[r.below(catalog.size())];
    auto item_index = r.below(type.item_pool);
    it.name = type.prefix.child("item" + std::to_string(item_index));
    items.push_back(std::move(it));
  }
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a].time < items[b].time; });
  workload w;
  w.seed = seed;
  w.count = count;
  w.duration_s = duration_s;
  w.interests.reserve(items.size());
  for (std::size_t idx : order) w.interests.push_back(std::move(items[idx]));
  return w;
}

}  // namespace ccnsim
