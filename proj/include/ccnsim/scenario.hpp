// Scenario configuration: topology, links, content catalog, priority
// announcements, scheduler constants, and workload parameters. Scenarios are
// plain JSON files; "default" names the built-in prototype network of four
// consumers, one router, and three publishers.
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccnsim/error.hpp"
#include "ccnsim/link.hpp"
#include "ccnsim/name.hpp"
#include "ccnsim/priority.hpp"
#include "ccnsim/rng.hpp"

namespace ccnsim {

struct size_distribution {
  enum class kind_t { uniform, log_uniform };
  kind_t kind = kind_t::uniform;
  double min_bytes = 1.0;
  double max_bytes = 1.0;

  std::uint64_t draw(rng& r) const {
    double v = kind == kind_t::uniform ? r.uniform(min_bytes, max_bytes)
                                       : r.log_uniform(min_bytes, max_bytes);
    if (v < 1.0) v = 1.0;
    return static_cast<std::uint64_t>(v);
  }
};

struct catalog_entry {
  content_name prefix;
  std::string publisher_id;
  int priority = 1;
  size_distribution size;
  std::uint64_t chunk_bytes = 4096;
  std::uint32_t item_pool = 16;  // distinct addressable items under the prefix
};

struct consumer_config {
  face_id face = 0;
  link_params link;
};

struct publisher_config {
  std::string id;
  face_id face = 0;
  double base_latency_s = 0.002;
  double read_rate_bytes_per_s = 35e6;
  link_params link;
};

struct scripted_interest {
  double time = 0.0;
  face_id face = 0;
  content_name name;
};

struct workload_config {
  std::uint32_t count = 100;
  double duration_s = 10.0;
  std::uint64_t seed = 1;
  // When non-empty, replaces the random workload entirely.
  std::vector<scripted_interest> script;
};

struct scenario {
  std::string name = "default";
  double pit_timeout_s = 4.0;
  std::size_t cs_capacity = 64;
  int starvation_threshold = 25;
  double cycle_cost_s = 0.05;
  std::uint64_t interest_size_bytes = 128;
  std::uint64_t announce_msg_bytes = 512;
  std::uint32_t extra_router_hops = 0;  // virtual routers below this one
  double hop_delay_s = 0.004;
  std::optional<double> horizon_s;  // absent: run until the event queue drains

  std::vector<consumer_config> consumers;
  std::vector<publisher_config> publishers;
  std::vector<catalog_entry> catalog;
  workload_config workload;

  const publisher_config* find_publisher(const std::string& id) const {
    for (const auto& p : publishers)
      if (p.id == id) return &p;
    return nullptr;
  }

  // Catalog rows grouped per publisher, in catalog order.
  std::vector<announcement> announcements() const {
    std::vector<announcement> out;
    for (const auto& p : publishers) {
      announcement a;
      a.publisher_id = p.id;
      for (const auto& c : catalog)
        if (c.publisher_id == p.id) a.entries.emplace_back(c.prefix, c.priority);
      if (!a.entries.empty()) out.push_back(std::move(a));
    }
    return out;
  }

  void validate() const;

  static scenario default_scenario();
  static scenario from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  // Resolves "default" to the built-in scenario, anything else as a path.
  static scenario load(const std::string& spec);
};

inline void scenario::validate() const {
  auto fail = [](const std::string& msg) { throw error(errc::invalid_scenario, msg); };
  if (consumers.empty()) fail("no consumers");
  if (publishers.empty()) fail("no publishers");
  if (catalog.empty()) fail("empty catalog");
  std::set<face_id> faces;
  for (const auto& c : consumers)
    if (!faces.insert(c.face).second) fail("duplicate face " + std::to_string(c.face));
  for (const auto& p : publishers) {
    if (!faces.insert(p.face).second) fail("duplicate face " + std::to_string(p.face));
    if (p.base_latency_s < 0) fail("negative base latency for " + p.id);
    if (p.read_rate_bytes_per_s <= 0) fail("non-positive read rate for " + p.id);
  }
  std::set<std::string> pub_ids;
  for (const auto& p : publishers)
    if (!pub_ids.insert(p.id).second) fail("duplicate publisher id " + p.id);
  for (const auto& c : catalog) {
    if (!find_publisher(c.publisher_id))
      fail("catalog prefix " + c.prefix.str() + " names unknown publisher " + c.publisher_id);
    if (c.size.min_bytes <= 0 || c.size.max_bytes < c.size.min_bytes)
      fail("bad size range for " + c.prefix.str());
    if (c.chunk_bytes == 0) fail("zero chunk size for " + c.prefix.str());
    if (c.item_pool == 0) fail("empty item pool for " + c.prefix.str());
  }
  auto check_link = [&](const link_params& l, const std::string& where) {
    if (l.bandwidth_bps <= 0 || l.propagation_s <= 0 || l.buffer_packets == 0)
      fail("bad link parameters at " + where);
  };
  for (const auto& c : consumers) check_link(c.link, "consumer face " + std::to_string(c.face));
  for (const auto& p : publishers) check_link(p.link, "publisher " + p.id);
  if (pit_timeout_s <= 0) fail("pit timeout must be positive");
  if (starvation_threshold < 1) fail("starvation threshold must be >= 1");
  if (cycle_cost_s <= 0) fail("cycle cost must be positive");
  if (interest_size_bytes == 0) fail("interest size must be positive");
  if (workload.script.empty()) {
    if (workload.count == 0) fail("workload count must be >= 1");
    if (workload.duration_s <= 0) fail("workload duration must be positive");
  } else {
    std::set<face_id> consumer_faces;
    for (const auto& c : consumers) consumer_faces.insert(c.face);
    for (const auto& s : workload.script) {
      if (!consumer_faces.count(s.face))
        fail("scripted interest on non-consumer face " + std::to_string(s.face));
      if (s.time < 0) fail("scripted interest before t=0");
    }
  }
  // The priority table must agree (distinct positive priorities, consistent
  // prefixes); agree() throws priority-conflict otherwise.
  priority_table table = agree(announcements());
  for (const auto& c : catalog)
    if (table.lookup_priority(c.prefix) != c.priority)
      fail("catalog priority mismatch for " + c.prefix.str());
}

inline scenario scenario::default_scenario() {
  scenario s;
  s.name = "default";

  link_params consumer_link{100e6, 0.001, 64};
  link_params publisher_link{50e6, 0.002, 64};

  for (face_id f = 0; f < 4; ++f) s.consumers.push_back({f, consumer_link});
  s.publishers.push_back({"pub1", 4, 0.002, 35e6, publisher_link});
  s.publishers.push_back({"pub2", 5, 0.002, 35e6, publisher_link});
  s.publishers.push_back({"pub3", 6, 0.002, 35e6, publisher_link});

  using dist = size_distribution;
  auto uni = [](double lo, double hi) {
    return dist{dist::kind_t::uniform, lo, hi};
  };
  auto logu = [](double lo, double hi) {
    return dist{dist::kind_t::log_uniform, lo, hi};
  };
  s.catalog = {
      {parse_name("/data/hospital/cancer_cases"), "pub1", 6, uni(2e3, 10e3), 2048, 16},
      {parse_name("/data/hospital/heart_cases"), "pub1", 5, uni(6e3, 18e3), 3072, 16},
      {parse_name("/data/bank/transactions"), "pub2", 4, uni(12e3, 30e3), 4096, 16},
      {parse_name("/data/bank/services"), "pub2", 3, uni(20e3, 50e3), 6144, 16},
      {parse_name("/data/web_server/mp4_videos"), "pub3", 2, logu(4e6, 300e6), 65536, 12},
      {parse_name("/data/web_server/bmp_images"), "pub3", 1, uni(1e6, 8e6), 16384, 12},
  };

  s.workload = {100, 10.0, 1, {}};
  return s;
}

inline size_distribution size_dist_from_json(const nlohmann::json& j) {
  size_distribution d;
  std::string kind = j.value("dist", "uniform");
  if (kind == "uniform")
    d.kind = size_distribution::kind_t::uniform;
  else if (kind == "log_uniform")
    d.kind = size_distribution::kind_t::log_uniform;
  else
    throw error(errc::invalid_scenario, "unknown size distribution: " + kind);
  d.min_bytes = j.at("min_bytes").get<double>();
  d.max_bytes = j.at("max_bytes").get<double>();
  return d;
}

inline nlohmann::json size_dist_to_json(const size_distribution& d) {
  return {{"dist", d.kind == size_distribution::kind_t::uniform ? "uniform" : "log_uniform"},
          {"min_bytes", d.min_bytes},
          {"max_bytes", d.max_bytes}};
}

inline link_params link_from_json(const nlohmann::json& j) {
  link_params l;
  l.bandwidth_bps = j.at("bandwidth_bps").get<double>();
  l.propagation_s = j.at("propagation_s").get<double>();
  l.buffer_packets = j.at("buffer_packets").get<std::size_t>();
  return l;
}

inline nlohmann::json link_to_json(const link_params& l) {
  return {{"bandwidth_bps", l.bandwidth_bps},
          {"propagation_s", l.propagation_s},
          {"buffer_packets", l.buffer_packets}};
}

inline scenario scenario::from_json(const nlohmann::json& j) {
  scenario s;
  s.name = j.value("name", "unnamed");
  s.pit_timeout_s = j.value("pit_timeout_s", s.pit_timeout_s);
  s.cs_capacity = j.value("cs_capacity", s.cs_capacity);
  s.starvation_threshold = j.value("starvation_threshold", s.starvation_threshold);
  s.cycle_cost_s = j.value("cycle_cost_s", s.cycle_cost_s);
  s.interest_size_bytes = j.value("interest_size_bytes", s.interest_size_bytes);
  s.announce_msg_bytes = j.value("announce_msg_bytes", s.announce_msg_bytes);
  s.extra_router_hops = j.value("extra_router_hops", s.extra_router_hops);
  s.hop_delay_s = j.value("hop_delay_s", s.hop_delay_s);
  if (j.contains("horizon_s") && !j.at("horizon_s").is_null())
    s.horizon_s = j.at("horizon_s").get<double>();
  for (const auto& c : j.at("consumers"))
    s.consumers.push_back({c.at("face").get<face_id>(), link_from_json(c.at("link"))});
  for (const auto& p : j.at("publishers"))
    s.publishers.push_back({p.at("id").get<std::string>(), p.at("face").get<face_id>(),
                            p.value("base_latency_s", 0.002),
                            p.at("read_rate_bytes_per_s").get<double>(),
                            link_from_json(p.at("link"))});
  for (const auto& c : j.at("catalog")) {
    catalog_entry e;
    e.prefix = parse_name(c.at("prefix").get<std::string>());
    e.publisher_id = c.at("publisher").get<std::string>();
    e.priority = c.at("priority").get<int>();
    e.size = size_dist_from_json(c.at("size"));
    e.chunk_bytes = c.at("chunk_bytes").get<std::uint64_t>();
    e.item_pool = c.value("item_pool", 16u);
    s.catalog.push_back(std::move(e));
  }
  const auto& w = j.at("workload");
  s.workload.count = w.value("count", 100u);
  s.workload.duration_s = w.value("duration_s", 10.0);
  s.workload.seed = w.value("seed", std::uint64_t{1});
  if (w.contains("script"))
    for (const auto& it : w.at("script"))
      s.workload.script.push_back({it.at("time").get<double>(), it.at("face").get<face_id>(),
                                   parse_name(it.at("name").get<std::string>())});
  return s;
}

inline nlohmann::json scenario::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["pit_timeout_s"] = pit_timeout_s;
  j["cs_capacity"] = cs_capacity;
  j["starvation_threshold"] = starvation_threshold;
  j["cycle_cost_s"] = cycle_cost_s;
  j["interest_size_bytes"] = interest_size_bytes;
  j["announce_msg_bytes"] = announce_msg_bytes;
  j["extra_router_hops"] = extra_router_hops;
  j["hop_delay_s"] = hop_delay_s;
  if (horizon_s) j["horizon_s"] = *horizon_s;
  j["consumers"] = nlohmann::json::array();
  for (const auto& c : consumers)
    j["consumers"].push_back({{"face", c.face}, {"link", link_to_json(c.link)}});
  j["publishers"] = nlohmann::json::array();
  for (const auto& p : publishers)
    j["publishers"].push_back({{"id", p.id},
                               {"face", p.face},
                               {"base_latency_s", p.base_latency_s},
                               {"read_rate_bytes_per_s", p.read_rate_bytes_per_s},
                               {"link", link_to_json(p.link)}});
  j["catalog"] = nlohmann::json::array();
  for (const auto& c : catalog)
    j["catalog"].push_back({{"prefix", c.prefix.str()},
                            {"publisher", c.publisher_id},
                            {"priority", c.priority},
                            {"size", size_dist_to_json(c.size)},
                            {"chunk_bytes", c.chunk_bytes},
                            {"item_pool", c.item_pool}});
  j["workload"] = {{"count", workload.count},
                   {"duration_s", workload.duration_s},
                   {"seed", workload.seed}};
  if (!workload.script.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto& s : workload.script)
      arr.push_back({{"time", s.time}, {"face", s.face}, {"name", s.name.str()}});
    j["workload"]["script"] = arr;
  }
  return j;
}

inline scenario scenario::load(const std::string& spec) {
  if (spec == "default") return default_scenario();
  std::ifstream in(spec);
  if (!in) throw error(errc::io_error, "cannot open scenario file " + spec);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::invalid_scenario, "scenario parse failure: " + std::string(e.what()));
  }
  try {
    return from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::invalid_scenario, "scenario field error: " + std::string(e.what()));
  }
}

}  // namespace ccnsim
