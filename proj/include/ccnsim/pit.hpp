// Pending Interest Table: names forwarded upstream but not yet satisfied,
// with the set of requesting faces and an expiry deadline.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ccnsim/name.hpp"
#include "ccnsim/packet.hpp"

namespace ccnsim {

struct pit_requester {
  face_id face = 0;
  std::uint64_t interest_id = 0;
};

struct pit_entry {
  content_name name;
  sim_time expiry = 0.0;
  std::vector<pit_requester> requesters;  // face set with the joining interest ids

  std::set<face_id> faces() const {
    std::set<face_id> out;
    for (const auto& r : requesters) out.insert(r.face);
    return out;
  }
};

enum class pit_add_result { created, aggregated };

class pit {
 public:
  std::size_t size() const { return entries_.size(); }

  const pit_entry* find(const content_name& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
  }

  // Records `face` against `name`. Creates the entry with
  // expiry = now + timeout when absent; otherwise adds the face to the
  // existing entry (set semantics, but every distinct interest id is kept so
  // deliveries can be attributed).
  pit_add_result add_face(const content_name& name, face_id face, sim_time now,
                          sim_time timeout, std::uint64_t interest_id = 0) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
      pit_entry e;
      e.name = name;
      e.expiry = now + timeout;
      e.requesters.push_back({face, interest_id});
      entries_.emplace(name, std::move(e));
      return pit_add_result::created;
    }
    auto& reqs = it->second.requesters;
    bool duplicate = std::any_of(reqs.begin(), reqs.end(), [&](const pit_requester& r) {
      return r.face == face && r.interest_id == interest_id;
    });
    if (!duplicate) reqs.push_back({face, interest_id});
    return pit_add_result::aggregated;
  }

  // Entry whose name is a prefix of `data_name` (interest-name-is-prefix-of-
  // data-name matching). The longest such entry wins.
  const pit_entry* match_data(const content_name& data_name) const {
    const pit_entry* best = nullptr;
    for (std::size_t len = data_name.size(); len >= 1; --len) {
      auto it = entries_.find(data_name.prefix(len));
      if (it != entries_.end()) {
        best = &it->second;
        break;
      }
    }
    return best;
  }

  void erase(const content_name& name) { entries_.erase(name); }

  // Removes and returns every entry with expiry <= now.
  std::vector<pit_entry> expire(sim_time now) {
    std::vector<pit_entry> out;
    for (auto it = entries_.begin(); it != entries_.end();) {
      if (it->second.expiry <= now) {
        out.push_back(std::move(it->second));
        it = entries_.erase(it);
      } else {
        ++it;
      }
    }
    return out;
  }

  std::vector<pit_entry> dump() const {
    std::vector<pit_entry> out;
    out.reserve(entries_.size());
    for (const auto& [_, e] : entries_) out.push_back(e);
    return out;
  }

 private:
  std::map<content_name, pit_entry> entries_;
};

}  // namespace ccnsim
