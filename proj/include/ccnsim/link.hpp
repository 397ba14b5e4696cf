// Point-to-point link direction: single-server FIFO with finite buffer.
// Serialization time is size*8/bandwidth; a packet arrives at the far end
// one propagation delay after its serialization completes. The buffer counts
// packets not yet fully serialized; an arrival finding it full is dropped.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>

#include "ccnsim/packet.hpp"

namespace ccnsim {

struct link_params {
  double bandwidth_bps = 1e8;
  double propagation_s = 0.001;
  std::size_t buffer_packets = 64;
};

struct transmit_result {
  bool dropped = false;
  sim_time serialization_end = 0.0;  // when the packet has fully left the sender
  sim_time arrival = 0.0;            // when it reaches the far end
};

class link {
 public:
  explicit link(link_params p = {}) : params_(p) {}

  const link_params& params() const { return params_; }

  sim_time serialization_time(std::uint64_t size_bytes) const {
    return static_cast<double>(size_bytes) * 8.0 / params_.bandwidth_bps;
  }

  std::size_t backlog(sim_time now) const {
    auto it = std::upper_bound(queued_ends_.begin(), queued_ends_.end(), now);
    return static_cast<std::size_t>(queued_ends_.end() - it);
  }

  transmit_result transmit(std::uint64_t size_bytes, sim_time now) {
    while (!queued_ends_.empty() && queued_ends_.front() <= now) queued_ends_.pop_front();
    if (queued_ends_.size() >= params_.buffer_packets) return {true, 0.0, 0.0};
    sim_time start = std::max(now, busy_until_);
    sim_time end = start + serialization_time(size_bytes);
    busy_until_ = end;
    queued_ends_.push_back(end);
    return {false, end, end + params_.propagation_s};
  }

 private:
  link_params params_;
  sim_time busy_until_ = 0.0;
  std::deque<sim_time> queued_ends_;  // serialization end per queued packet
};

}  // namespace ccnsim
