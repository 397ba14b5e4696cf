// Publisher priority announcements and the agreed prefix -> priority table.
//
// Publishers announce (prefix, priority) pairs during the initialization
// phase; the merged table must assign pairwise-distinct priorities, and a
// higher number means higher priority. Routers receive identical copies of
// the agreed table before the scheduler is allowed to run.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccnsim/error.hpp"
#include "ccnsim/name.hpp"

namespace ccnsim {

struct announcement {
  std::string publisher_id;
  std::vector<std::pair<content_name, int>> entries;  // (prefix, priority > 0)
};

struct priority_match {
  content_name prefix;  // longest announced prefix covering the name
  int priority = 0;
};

class priority_table {
 public:
  priority_table() = default;

  bool agreed() const { return agreed_; }
  const std::map<content_name, int>& entries() const { return entries_; }

  // Priority of the longest announced prefix covering `name`, together with
  // that prefix. Unannounced content gets no match.
  std::optional<priority_match> match(const content_name& name) const {
    // Walk the name's own prefixes longest-first; each probe is an exact map
    // lookup, so this path is independent of the scan-all oracle in tests.
    for (std::size_t len = name.size(); len >= 1; --len) {
      auto it = entries_.find(name.prefix(len));
      if (it != entries_.end()) return priority_match{it->first, it->second};
    }
    return std::nullopt;
  }

  // Priority of `name`; 0 (below every announced level) if unannounced.
  int lookup_priority(const content_name& name) const {
    auto m = match(name);
    return m ? m->priority : 0;
  }

  friend bool operator==(const priority_table& a, const priority_table& b) {
    return a.agreed_ == b.agreed_ && a.entries_ == b.entries_;
  }

  friend priority_table agree(const std::vector<announcement>& announcements);

 private:
  std::map<content_name, int> entries_;
  bool agreed_ = false;
};

// Merges all announcements into one agreed table. Two prefixes may not share
// a priority level and one prefix may not be announced twice with different
// levels.
inline priority_table agree(const std::vector<announcement>& announcements) {
  if (announcements.empty())
    throw error(errc::priority_conflict, "no announcements to agree on");
  priority_table table;
  std::map<int, content_name> by_priority;
  for (const auto& a : announcements) {
    for (const auto& [prefix, prio] : a.entries) {
      if (prio <= 0)
        throw error(errc::priority_conflict,
                    "non-positive priority for " + prefix.str());
      auto [it, inserted] = table.entries_.emplace(prefix, prio);
      if (!inserted && it->second != prio)
        throw error(errc::priority_conflict,
                    "prefix " + prefix.str() + " announced with two priorities");
      auto [pit, prio_free] = by_priority.emplace(prio, prefix);
      if (!prio_free && pit->second != prefix)
        throw error(errc::priority_conflict,
                    "priority " + std::to_string(prio) + " claimed by " +
                        pit->second.str() + " and " + prefix.str());
    }
  }
  table.agreed_ = true;
  return table;
}

// One downstream router's copy of the table.
struct router_table_slot {
  priority_table table;
  std::optional<double> installed_at;  // seconds
};

// Hop-by-hop propagation: every router in the chain ends up with an identical
// copy, installed hop_delay seconds after its upstream neighbor. An empty
// chain is a no-op.
inline void propagate(const priority_table& table, std::vector<router_table_slot>& chain,
                      double start_time, double hop_delay) {
  if (!table.agreed())
    throw error(errc::table_not_agreed, "cannot propagate a table before agreement");
  double t = start_time;
  for (auto& slot : chain) {
    t += hop_delay;
    slot.table = table;
    slot.installed_at = t;
  }
}

}  // namespace ccnsim
