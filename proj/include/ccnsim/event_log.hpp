// Append-only run log. Records serialize to tab-separated text with fixed
// columns (time, kind, face, name, detail); metrics are computed from these
// records and from nothing else, so a persisted log reproduces the online
// numbers exactly. Times are quantized to microseconds when a record is
// appended, which makes the TSV round-trip lossless.
#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ccnsim/error.hpp"
#include "ccnsim/packet.hpp"

namespace ccnsim {

enum class record_kind {
  announce_msg,
  table_installed,
  table_entry,
  interest_generated,
  interest_arrives,
  cs_hit,
  head_of_queue,
  scheduler_cycle,
  interest_forwarded,
  pit_aggregated,
  pit_joiner,
  no_route_drop,
  publisher_respond,
  pub_no_content,
  chunk_arrives,
  data_discarded,
  content_cached,
  chunk_delivered,
  pit_expired,
  link_drop,
};

inline const char* to_string(record_kind k) {
  switch (k) {
    case record_kind::announce_msg: return "announce_msg";
    case record_kind::table_installed: return "table_installed";
    case record_kind::table_entry: return "table_entry";
    case record_kind::interest_generated: return "interest_generated";
    case record_kind::interest_arrives: return "interest_arrives";
    case record_kind::cs_hit: return "cs_hit";
    case record_kind::head_of_queue: return "head_of_queue";
    case record_kind::scheduler_cycle: return "scheduler_cycle";
    case record_kind::interest_forwarded: return "interest_forwarded";
    case record_kind::pit_aggregated: return "pit_aggregated";
    case record_kind::pit_joiner: return "pit_joiner";
    case record_kind::no_route_drop: return "no_route_drop";
    case record_kind::publisher_respond: return "publisher_respond";
    case record_kind::pub_no_content: return "pub_no_content";
    case record_kind::chunk_arrives: return "chunk_arrives";
    case record_kind::data_discarded: return "data_discarded";
    case record_kind::content_cached: return "content_cached";
    case record_kind::chunk_delivered: return "chunk_delivered";
    case record_kind::pit_expired: return "pit_expired";
    case record_kind::link_drop: return "link_drop";
  }
  return "unknown";
}

inline std::optional<record_kind> record_kind_from(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(record_kind::link_drop); ++k) {
    auto kind = static_cast<record_kind>(k);
    if (s == to_string(kind)) return kind;
  }
  return std::nullopt;
}

struct log_record {
  sim_time time = 0.0;
  record_kind kind = record_kind::scheduler_cycle;
  int face = -1;  // -1 when not applicable
  std::string name;
  std::string detail;
};

// Quantizes to whole microseconds; %.6f then round-trips bit-exactly.
inline sim_time quantize_time(sim_time t) { return std::round(t * 1e6) / 1e6; }

inline std::string format_time(sim_time t) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", t);
  return buf;
}

class event_log {
 public:
  const std::vector<log_record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  void append(sim_time t, record_kind kind, int face, std::string name, std::string detail) {
    records_.push_back({quantize_time(t), kind, face, std::move(name), std::move(detail)});
  }

  void write_tsv(std::ostream& os) const {
    os << "time\tkind\tface\tname\tdetail\n";
    for (const auto& r : records_) {
      os << format_time(r.time) << '\t' << to_string(r.kind) << '\t';
      if (r.face < 0)
        os << '-';
      else
        os << r.face;
      os << '\t' << (r.name.empty() ? "-" : r.name) << '\t'
         << (r.detail.empty() ? "-" : r.detail) << '\n';
    }
  }

  std::string to_tsv() const;

  static event_log read_tsv(std::istream& is) {
    event_log log;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
      if (first) {  // header
        first = false;
        continue;
      }
      if (line.empty()) continue;
      std::array<std::string_view, 5> cols;
      std::string_view rest = line;
      for (int i = 0; i < 5; ++i) {
        auto tab = rest.find('\t');
        if (tab == std::string_view::npos && i < 4)
          throw error(errc::io_error, "malformed log line: " + line);
        cols[i] = rest.substr(0, tab);
        rest = tab == std::string_view::npos ? std::string_view{} : rest.substr(tab + 1);
      }
      log_record r;
      r.time = std::strtod(std::string(cols[0]).c_str(), nullptr);
      auto kind = record_kind_from(cols[1]);
      if (!kind) throw error(errc::io_error, "unknown record kind: " + std::string(cols[1]));
      r.kind = *kind;
      r.face = cols[2] == "-" ? -1 : std::stoi(std::string(cols[2]));
      r.name = cols[3] == "-" ? std::string{} : std::string(cols[3]);
      r.detail = cols[4] == "-" ? std::string{} : std::string(cols[4]);
      log.records_.push_back(std::move(r));
    }
    return log;
  }

 private:
  std::vector<log_record> records_;
};

// Value of a space-separated "key=value" field inside a record's detail.
inline std::optional<std::string_view> detail_get(std::string_view detail, std::string_view key) {
  std::size_t pos = 0;
  while (pos < detail.size()) {
    std::size_t end = detail.find(' ', pos);
    if (end == std::string_view::npos) end = detail.size();
    std::string_view token = detail.substr(pos, end - pos);
    if (token.size() > key.size() && token.substr(0, key.size()) == key &&
        token[key.size()] == '=')
      return token.substr(key.size() + 1);
    pos = end + 1;
  }
  return std::nullopt;
}

inline std::optional<std::uint64_t> detail_u64(std::string_view detail, std::string_view key) {
  auto v = detail_get(detail, key);
  if (!v) return std::nullopt;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{}) return std::nullopt;
  return out;
}

// Parses a ";"-separated id list, e.g. "ids=3;17".
inline std::vector<std::uint64_t> detail_id_list(std::string_view detail, std::string_view key) {
  std::vector<std::uint64_t> out;
  auto v = detail_get(detail, key);
  if (!v) return out;
  std::string_view s = *v;
  std::size_t pos = 0;
  while (pos <= s.size() && !s.empty()) {
    std::size_t end = s.find(';', pos);
    if (end == std::string_view::npos) end = s.size();
    std::uint64_t id = 0;
    auto piece = s.substr(pos, end - pos);
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), id);
    if (ec == std::errc{}) out.push_back(id);
    if (end == s.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::string event_log::to_tsv() const {
  std::string out;
  out.reserve(records_.size() * 64 + 64);
  out += "time\tkind\tface\tname\tdetail\n";
  for (const auto& r : records_) {
    out += format_time(r.time);
    out += '\t';
    out += to_string(r.kind);
    out += '\t';
    out += r.face < 0 ? std::string("-") : std::to_string(r.face);
    out += '\t';
    out += r.name.empty() ? "-" : r.name;
    out += '\t';
    out += r.detail.empty() ? "-" : r.detail;
    out += '\n';
  }
  return out;
}

}  // namespace ccnsim
