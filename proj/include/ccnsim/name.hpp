// Hierarchical content names and component-wise prefix matching.
#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ccnsim/error.hpp"

namespace ccnsim {

// A content name is an ordered, non-empty list of path components.
// Canonical text form is '/'-joined with a leading '/'.
class content_name {
 public:
  content_name() = default;

  explicit content_name(std::vector<std::string> components)
      : components_(std::move(components)) {
    validate();
  }

  const std::vector<std::string>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const std::string& component(std::size_t i) const { return components_[i]; }
  bool empty() const { return components_.empty(); }

  std::string str() const {
    std::string out;
    for (const auto& c : components_) {
      out += '/';
      out += c;
    }
    return out;
  }

  content_name child(std::string component) const {
    auto comps = components_;
    comps.push_back(std::move(component));
    return content_name(std::move(comps));
  }

  // First n components as a name of their own.
  content_name prefix(std::size_t n) const {
    return content_name(std::vector<std::string>(components_.begin(), components_.begin() + n));
  }

  friend bool operator==(const content_name& a, const content_name& b) {
    return a.components_ == b.components_;
  }
  friend auto operator<=>(const content_name& a, const content_name& b) {
    return a.components_ <=> b.components_;
  }

 private:
  void validate() const {
    if (components_.empty())
      throw error(errc::malformed_name, "name has no components");
    for (const auto& c : components_) {
      if (c.empty())
        throw error(errc::malformed_name, "empty name component");
      for (unsigned char ch : c) {
        if (ch == '/' || std::isspace(ch) || std::iscntrl(ch))
          throw error(errc::malformed_name, "component contains '/' or whitespace: " + c);
      }
    }
  }

  std::vector<std::string> components_;
};

// Parses the canonical slash-separated form, e.g. "/data/bank/transactions".
inline content_name parse_name(std::string_view text) {
  if (text.empty() || text.front() != '/')
    throw error(errc::malformed_name, "name must begin with '/': '" + std::string(text) + "'");
  std::vector<std::string> comps;
  std::size_t pos = 1;
  while (pos <= text.size()) {
    std::size_t next = text.find('/', pos);
    if (next == std::string_view::npos) next = text.size();
    if (next == pos)
      throw error(errc::malformed_name, "empty segment in '" + std::string(text) + "'");
    comps.emplace_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return content_name(std::move(comps));
}

// True iff every component of `prefix` equals the corresponding leading
// component of `name`. Component-wise, so /data/bank is not a prefix of
// /data/bankers.
inline bool is_prefix_of(const content_name& prefix, const content_name& name) {
  if (prefix.size() > name.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix.component(i) != name.component(i)) return false;
  return true;
}

// Stable 64-bit hash of the canonical form (FNV-1a).
inline std::uint64_t name_hash(const content_name& n) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& c : n.components()) {
    h = (h ^ static_cast<unsigned char>('/')) * 1099511628211ull;
    for (unsigned char ch : c) h = (h ^ ch) * 1099511628211ull;
  }
  return h;
}

}  // namespace ccnsim
