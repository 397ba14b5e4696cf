// Forwarding Information Base: prefix -> outgoing face, consulted by longest
// matching prefix.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ccnsim/name.hpp"
#include "ccnsim/packet.hpp"

namespace ccnsim {

struct fib_entry {
  content_name prefix;
  face_id out_face = 0;
};

class fib {
 public:
  std::size_t size() const { return entries_.size(); }

  // Last insert wins for a repeated prefix; prefixes stay unique.
  void add(const content_name& prefix, face_id out_face) { entries_[prefix] = out_face; }

  // Out-face of the entry with the greatest component count among entries
  // whose prefix covers `name`. Probes the name's own prefixes longest-first,
  // which keeps this route independent of the scan-every-entry oracle used by
  // the tests.
  std::optional<face_id> longest_prefix_match(const content_name& name) const {
    for (std::size_t len = name.size(); len >= 1; --len) {
      auto it = entries_.find(name.prefix(len));
      if (it != entries_.end()) return it->second;
    }
    return std::nullopt;
  }

  std::vector<fib_entry> dump() const {
    std::vector<fib_entry> out;
    out.reserve(entries_.size());
    for (const auto& [prefix, face] : entries_) out.push_back({prefix, face});
    return out;
  }

 private:
  std::map<content_name, face_id> entries_;
};

}  // namespace ccnsim
