// The CCN router: Content Store, Pending Interest Table, Forwarding
// Information Base, per-consumer interest queues, and the arrival-side
// processing rules.
//
// Arrival of an interest only checks the CS and enqueues on a miss; PIT
// recording and FIB forwarding happen when the scheduler selects the
// interest at the processing edge. Data arriving with no covering PIT entry
// (or for content already cached) is discarded.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "ccnsim/content_store.hpp"
#include "ccnsim/fib.hpp"
#include "ccnsim/packet.hpp"
#include "ccnsim/pit.hpp"
#include "ccnsim/scheduler.hpp"

namespace ccnsim {

struct serve_from_cs {
  content_record record;
};
struct enqueued {};
using interest_action = std::variant<serve_from_cs, enqueued>;

enum class discard_reason { duplicate, unsolicited };

struct discard {
  discard_reason reason;
};
struct deliver {
  std::vector<pit_requester> requesters;  // faces (with interest ids) to copy the chunk to
  bool final_chunk = false;
  bool cached = false;                         // final chunk stored in the CS
  std::optional<content_record> evicted;       // LRU victim, when caching evicted one
};
using data_action = std::variant<discard, deliver>;

class router {
 public:
  router(std::size_t cs_capacity, int starvation_threshold)
      : cs_(cs_capacity), scheduler_(starvation_threshold) {}

  content_store& cs() { return cs_; }
  class pit& pit() { return pit_; }
  class fib& fib() { return fib_; }
  class scheduler& scheduler() { return scheduler_; }
  const class scheduler& scheduler() const { return scheduler_; }

  // CS hit -> the interest is consumed immediately and never queues.
  // CS miss -> it joins the queue of its origin face.
  interest_action on_interest_arrival(face_id face, const interest& in, sim_time now) {
    if (!scheduler_.has_queue(face))
      throw error(errc::unknown_face, "no queue registered for face " + std::to_string(face));
    if (auto hit = cs_.lookup(in.name)) return serve_from_cs{*hit};
    scheduler_.enqueue(face, in, now);
    return enqueued{};
  }

  // Duplicate and unsolicited data is dropped; otherwise the chunk goes to
  // every requesting face, the final chunk is cached, and the PIT entry is
  // removed once the final chunk has been handed to the downstream faces.
  data_action on_data_arrival(const data_chunk& chunk, sim_time now) {
    content_name content = content_of_chunk(chunk.name);
    if (cs_.covers(content)) return discard{discard_reason::duplicate};
    const pit_entry* entry = pit_.match_data(chunk.name);
    if (entry == nullptr) return discard{discard_reason::unsolicited};

    deliver out;
    out.requesters = entry->requesters;
    out.final_chunk = chunk.chunk_index + 1 == chunk.chunk_count;
    if (out.final_chunk) {
      content_record record;
      record.name = content;
      record.chunk_bytes = chunk.nominal_chunk_bytes;
      record.chunk_count = chunk.chunk_count;
      record.total_size =
          static_cast<std::uint64_t>(chunk.chunk_count - 1) * chunk.nominal_chunk_bytes +
          chunk.payload_size;
      record.inserted_at = now;
      out.evicted = cs_.insert(record);
      out.cached = true;
      pit_.erase(entry->name);
    }
    return out;
  }

  // One row per CS/PIT/FIB entry, tab-separated, for debugging.
  void dump_tables(std::ostream& os) const {
    os << "table\tkey\tdetail\n";
    for (const auto& r : cs_.dump())
      os << "CS\t" << r.name.str() << "\tsize=" << r.total_size
         << " chunks=" << r.chunk_count << "\n";
    for (const auto& e : pit_.dump()) {
      os << "PIT\t" << e.name.str() << "\texpiry=" << e.expiry << " faces=";
      bool first = true;
      for (face_id f : e.faces()) {
        if (!first) os << ",";
        os << f;
        first = false;
      }
      os << "\n";
    }
    for (const auto& e : fib_.dump())
      os << "FIB\t" << e.prefix.str() << "\tface=" << e.out_face << "\n";
  }

 private:
  content_store cs_;
  class pit pit_;
  class fib fib_;
  class scheduler scheduler_;
};

}  // namespace ccnsim
