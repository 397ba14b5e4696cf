// Interest and data-chunk packet types.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ccnsim/name.hpp"

namespace ccnsim {

using face_id = std::uint32_t;
using sim_time = double;  // seconds

struct interest {
  content_name name;
  face_id origin_face = 0;
  sim_time created_at = 0.0;
  // Set when the interest becomes the head of its queue (the processing edge).
  std::optional<sim_time> edge_arrival_at;
  // Simulation-wide identifier used to join log records; 0 is fine for tests.
  std::uint64_t id = 0;
};

struct data_chunk {
  content_name name;  // content name extended with "chunk"/"<index>"
  std::uint32_t chunk_index = 0;
  std::uint32_t chunk_count = 1;
  std::uint64_t payload_size = 0;          // bytes carried by this chunk
  std::uint64_t nominal_chunk_bytes = 0;   // full-chunk payload for this train
  // Interest id whose forwarding triggered this chunk train.
  std::uint64_t request_id = 0;
};

// Name of chunk `index` of the content called `base`.
inline content_name chunk_name(const content_name& base, std::uint32_t index) {
  return base.child("chunk").child(std::to_string(index));
}

// Strips a trailing "chunk"/"<index>" pair; returns the name unchanged if the
// suffix is absent.
inline content_name content_of_chunk(const content_name& n) {
  if (n.size() >= 3 && n.component(n.size() - 2) == "chunk") return n.prefix(n.size() - 2);
  return n;
}

inline bool chunk_valid(const data_chunk& c) {
  return c.chunk_index < c.chunk_count && c.payload_size > 0;
}

}  // namespace ccnsim
