// Deterministic discrete-event engine for the prototype network: consumers
// on one side of a single router, publishers on the other.
//
// Run outline:
//   * initialization: publishers propose their (prefix, priority) entries,
//     the merged table is broadcast back and acknowledged, and the agreed
//     table is installed at the router (plus one hop delay per extra
//     downstream router). The scheduler does not run before installation.
//   * workload interests travel consumer -> router; a CS hit is served
//     straight from the cache, otherwise the interest queues per consumer.
//   * scheduler cycles pick a head interest (see scheduler.hpp); the pick is
//     made at cycle start and takes effect one cycle cost later, when PIT
//     recording and FIB forwarding happen.
//   * publishers answer a forwarded interest with a chunk train paced by the
//     upstream link; the router delivers chunks to every PIT face, caches
//     the content on the final chunk, and discards duplicates/unsolicited
//     data. PIT entries expire on a fixed deadline.
//
// Every observable step appends to the event log; metrics are derived from
// the log alone.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ccnsim/event_log.hpp"
#include "ccnsim/link.hpp"
#include "ccnsim/router.hpp"
#include "ccnsim/scenario.hpp"
#include "ccnsim/workload.hpp"

namespace ccnsim {

struct response_plan {
  std::uint64_t size_bytes = 0;
  std::uint64_t chunk_bytes = 0;
  std::uint32_t chunk_count = 0;
  sim_time first_emit_at = 0.0;  // response latency = base + size / read rate
};

// Size is drawn per content name (stable across repeat fetches within a run).
inline response_plan publisher_respond(const publisher_config& pub,
                                       const std::vector<catalog_entry>& catalog,
                                       const content_name& name, sim_time now,
                                       std::uint64_t run_seed) {
  const catalog_entry* hosted = nullptr;
  for (const auto& e : catalog) {
    if (e.publisher_id != pub.id) continue;
    if (!is_prefix_of(e.prefix, name)) continue;
    if (hosted == nullptr || e.prefix.size() > hosted->prefix.size()) hosted = &e;
  }
  if (hosted == nullptr)
    throw error(errc::no_such_content, pub.id + " does not host " + name.str());

  rng size_rng(mix_seed(mix_seed(run_seed, 3), name_hash(name)));
  response_plan plan;
  plan.size_bytes = hosted->size.draw(size_rng);
  plan.chunk_bytes = hosted->chunk_bytes;
  plan.chunk_count =
      static_cast<std::uint32_t>((plan.size_bytes + plan.chunk_bytes - 1) / plan.chunk_bytes);
  plan.first_emit_at =
      now + pub.base_latency_s +
      static_cast<double>(plan.size_bytes) / pub.read_rate_bytes_per_s;
  return plan;
}

class engine {
 public:
  using cycle_observer =
      std::function<void(const scheduler&, const scheduler_decision&, sim_time)>;

  engine(scenario sc, std::uint64_t seed)
      : sc_(std::move(sc)),
        seed_(seed),
        router_(sc_.cs_capacity, sc_.starvation_threshold),
        sched_rng_(mix_seed(seed, 2)) {
    sc_.validate();
    table_ = agree(sc_.announcements());
    for (const auto& c : sc_.consumers) {
      router_.scheduler().add_queue(c.face);
      links_.emplace(c.face, face_links{link(c.link), link(c.link)});
      consumer_faces_.insert(c.face);
    }
    for (std::size_t i = 0; i < sc_.publishers.size(); ++i) {
      const auto& p = sc_.publishers[i];
      links_.emplace(p.face, face_links{link(p.link), link(p.link)});
      pub_by_face_.emplace(p.face, i);
    }
    for (const auto& c : sc_.catalog)
      router_.fib().add(c.prefix, sc_.find_publisher(c.publisher_id)->face);

    if (!sc_.workload.script.empty()) {
      std::vector<scripted_interest> script = sc_.workload.script;
      std::stable_sort(script.begin(), script.end(),
                       [](const auto& a, const auto& b) { return a.time < b.time; });
      for (const auto& s : script) workload_.interests.push_back({s.time, s.face, s.name});
      workload_.count = static_cast<std::uint32_t>(script.size());
      workload_.duration_s = sc_.workload.duration_s;
      workload_.seed = seed;
    } else {
      std::vector<face_id> faces(consumer_faces_.begin(), consumer_faces_.end());
      workload_ = generate_workload(seed, sc_.workload.count, sc_.workload.duration_s, faces,
                                    sc_.catalog);
    }
  }

  void set_cycle_observer(cycle_observer obs) { observer_ = std::move(obs); }

  const event_log& run() {
    for (std::size_t i = 0; i < sc_.publishers.size(); ++i) {
      auto tr = uplink(sc_.publishers[i].face).transmit(sc_.announce_msg_bytes, 0.0);
      schedule(tr.arrival, ev_announce_propose{i});
    }
    for (std::size_t i = 0; i < workload_.interests.size(); ++i)
      schedule(workload_.interests[i].time, ev_interest_generated{i});

    while (!events_.empty()) {
      event ev = events_.top();
      if (sc_.horizon_s && ev.time > *sc_.horizon_s) break;
      events_.pop();
      now_ = ev.time;
      std::visit([&](auto& payload) { dispatch(payload); }, ev.payload);
    }
    return log_;
  }

  const event_log& log() const { return log_; }
  const router& get_router() const { return router_; }
  router& get_router() { return router_; }
  const priority_table& table() const { return table_; }
  const workload& get_workload() const { return workload_; }

 private:
  // ---- events ----
  struct ev_announce_propose { std::size_t pub; };
  struct ev_announce_table { std::size_t pub; };
  struct ev_announce_ack { std::size_t pub; };
  struct ev_table_installed {};
  struct ev_interest_generated { std::size_t index; };
  struct ev_interest_arrives { interest in; };
  struct ev_interest_at_publisher { interest in; std::size_t pub; };
  struct ev_cycle_decide {};
  struct ev_cycle_complete { scheduler_decision decision; };
  struct ev_chunk_emit { std::uint64_t train; std::uint32_t index; };
  struct ev_chunk_at_router { data_chunk chunk; face_id from; };
  struct ev_chunk_at_consumer { data_chunk chunk; face_id face; std::vector<std::uint64_t> ids; };
  struct ev_pit_sweep {};

  using event_payload =
      std::variant<ev_announce_propose, ev_announce_table, ev_announce_ack, ev_table_installed,
                   ev_interest_generated, ev_interest_arrives, ev_interest_at_publisher,
                   ev_cycle_decide, ev_cycle_complete, ev_chunk_emit, ev_chunk_at_router,
                   ev_chunk_at_consumer, ev_pit_sweep>;

  struct event {
    sim_time time;
    std::uint64_t seq;
    event_payload payload;
  };
  struct event_after {
    bool operator()(const event& a, const event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  // A chunk train in flight, either from a publisher or replayed from the CS.
  struct train {
    content_name name;
    std::uint64_t chunk_bytes = 0;
    std::uint32_t chunk_count = 0;
    std::uint64_t total_bytes = 0;
    std::uint64_t request_id = 0;           // publisher trains
    face_id source_face = 0;                // publisher face, or consumer face for CS trains
    bool from_cs = false;
    std::vector<std::uint64_t> ids;         // CS trains: interests being served
  };

  struct face_links {
    link to_router;
    link from_router;
  };

  void schedule(sim_time t, event_payload payload) {
    events_.push(event{t, seq_++, std::move(payload)});
  }

  link& uplink(face_id f) { return links_.at(f).to_router; }
  link& downlink(face_id f) { return links_.at(f).from_router; }

  int priority_of(const content_name& n) const { return table_.lookup_priority(n); }

  static std::string id_list(std::vector<std::uint64_t> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += ';';
      out += std::to_string(ids[i]);
    }
    return out;
  }

  // ---- initialization phase ----
  void dispatch(ev_announce_propose& e) {
    const auto& pub = sc_.publishers[e.pub];
    log_.append(now_, record_kind::announce_msg, static_cast<int>(pub.face), "",
                "phase=propose publisher=" + pub.id);
    if (++proposals_ == sc_.publishers.size()) {
      for (std::size_t i = 0; i < sc_.publishers.size(); ++i) {
        auto tr = downlink(sc_.publishers[i].face).transmit(sc_.announce_msg_bytes, now_);
        schedule(tr.arrival, ev_announce_table{i});
      }
    }
  }

  void dispatch(ev_announce_table& e) {
    const auto& pub = sc_.publishers[e.pub];
    log_.append(now_, record_kind::announce_msg, static_cast<int>(pub.face), "",
                "phase=table publisher=" + pub.id);
    auto tr = uplink(pub.face).transmit(sc_.announce_msg_bytes, now_);
    schedule(tr.arrival, ev_announce_ack{e.pub});
  }

  void dispatch(ev_announce_ack& e) {
    const auto& pub = sc_.publishers[e.pub];
    log_.append(now_, record_kind::announce_msg, static_cast<int>(pub.face), "",
                "phase=ack publisher=" + pub.id);
    if (++acks_ == sc_.publishers.size()) {
      sim_time install_at = now_ + sc_.extra_router_hops * sc_.hop_delay_s;
      schedule(install_at, ev_table_installed{});
    }
  }

  void dispatch(ev_table_installed&) {
    table_installed_ = true;
    log_.append(now_, record_kind::table_installed, -1, "",
                "entries=" + std::to_string(table_.entries().size()) +
                    " hops=" + std::to_string(sc_.extra_router_hops));
    for (const auto& [prefix, prio] : table_.entries())
      log_.append(now_, record_kind::table_entry, -1, prefix.str(),
                  "prio=" + std::to_string(prio));
    maybe_start_cycle();
  }

  // ---- consumer side ----
  void dispatch(ev_interest_generated& e) {
    const auto& wi = workload_.interests[e.index];
    interest in;
    in.name = wi.name;
    in.origin_face = wi.face;
    in.created_at = now_;
    in.id = e.index;
    std::string tag = "id=" + std::to_string(in.id) + " prio=" + std::to_string(priority_of(wi.name));
    log_.append(now_, record_kind::interest_generated, static_cast<int>(wi.face), wi.name.str(), tag);
    auto tr = uplink(wi.face).transmit(sc_.interest_size_bytes, now_);
    if (tr.dropped) {
      log_.append(now_, record_kind::link_drop, static_cast<int>(wi.face), wi.name.str(),
                  "dir=up kind=interest " + tag);
      return;
    }
    schedule(tr.arrival, ev_interest_arrives{std::move(in)});
  }

  void dispatch(ev_interest_arrives& e) {
    interest& in = e.in;
    std::string tag = "id=" + std::to_string(in.id) + " prio=" + std::to_string(priority_of(in.name));
    auto action = router_.on_interest_arrival(in.origin_face, in, now_);
    if (auto* hit = std::get_if<serve_from_cs>(&action)) {
      log_.append(now_, record_kind::cs_hit, static_cast<int>(in.origin_face), in.name.str(),
                  tag + " at=arrival");
      start_cs_train(hit->record, in.origin_face, {in.id});
      return;
    }
    log_.append(now_, record_kind::interest_arrives, static_cast<int>(in.origin_face),
                in.name.str(), tag);
    if (router_.scheduler().queue_length(in.origin_face) == 1)
      log_.append(now_, record_kind::head_of_queue, static_cast<int>(in.origin_face),
                  in.name.str(), tag);
    maybe_start_cycle();
  }

  // ---- scheduler cycles: decide at T, effects at T + cycle cost ----
  void maybe_start_cycle() {
    if (cycle_pending_ || !table_installed_ || router_.scheduler().all_empty()) return;
    cycle_pending_ = true;
    schedule(now_, ev_cycle_decide{});
  }

  void dispatch(ev_cycle_decide&) {
    auto d = router_.scheduler().decide(table_, sched_rng_);
    if (!d) {
      cycle_pending_ = false;
      return;
    }
    schedule(now_ + sc_.cycle_cost_s, ev_cycle_complete{std::move(*d)});
  }

  void dispatch(ev_cycle_complete& e) {
    const scheduler_decision& d = e.decision;
    log_.append(now_, record_kind::scheduler_cycle, -1, "",
                std::string("mode=") +
                    (d.mode == scheduler_decision::mode_t::forced ? "forced" : "priority") +
                    " pending=" + std::to_string(d.forced_faces_pending));

    if (d.forwarded) process_selection(d);

    router_.scheduler().apply(d, now_);
    for (face_id f : d.serviced_faces)
      if (const interest* h = router_.scheduler().head(f))
        log_.append(now_, record_kind::head_of_queue, static_cast<int>(f), h->name.str(),
                    "id=" + std::to_string(h->id) + " prio=" + std::to_string(priority_of(h->name)));
    if (observer_) observer_(router_.scheduler(), d, now_);
    cycle_pending_ = false;
    maybe_start_cycle();
  }

  void process_selection(const scheduler_decision& d) {
    const auto& [face, in] = *d.forwarded;
    const int prio = priority_of(in.name);
    auto tag = [&](const interest& i) {
      return "id=" + std::to_string(i.id) + " prio=" + std::to_string(prio);
    };

    // Content may have been cached while the interest sat in its queue.
    if (auto hit = router_.cs().lookup(in.name)) {
      log_.append(now_, record_kind::cs_hit, static_cast<int>(face), in.name.str(),
                  tag(in) + " at=selection");
      start_cs_train(*hit, face, {in.id});
      for (const auto& [jf, ji] : d.pit_joiners) {
        log_.append(now_, record_kind::cs_hit, static_cast<int>(jf), ji.name.str(),
                    tag(ji) + " at=selection joiner=1");
        start_cs_train(*hit, jf, {ji.id});
      }
      return;
    }

    if (router_.pit().find(in.name) != nullptr) {
      router_.pit().add_face(in.name, face, now_, sc_.pit_timeout_s, in.id);
      log_.append(now_, record_kind::pit_aggregated, static_cast<int>(face), in.name.str(),
                  tag(in));
      join_pit(d, prio);
      return;
    }

    auto out_face = router_.fib().longest_prefix_match(in.name);
    if (!out_face) {
      log_.append(now_, record_kind::no_route_drop, static_cast<int>(face), in.name.str(),
                  tag(in));
      for (const auto& [jf, ji] : d.pit_joiners)
        log_.append(now_, record_kind::no_route_drop, static_cast<int>(jf), ji.name.str(),
                    tag(ji) + " joiner=1");
      return;
    }

    router_.pit().add_face(in.name, face, now_, sc_.pit_timeout_s, in.id);
    schedule(now_ + sc_.pit_timeout_s, ev_pit_sweep{});
    log_.append(now_, record_kind::interest_forwarded, static_cast<int>(face), in.name.str(),
                tag(in) + " out=" + std::to_string(*out_face));
    join_pit(d, prio);

    auto tr = downlink(*out_face).transmit(sc_.interest_size_bytes, now_);
    if (tr.dropped) {
      log_.append(now_, record_kind::link_drop, static_cast<int>(*out_face), in.name.str(),
                  "dir=down kind=interest " + tag(in));
      return;
    }
    schedule(tr.arrival, ev_interest_at_publisher{in, pub_by_face_.at(*out_face)});
  }

  void join_pit(const scheduler_decision& d, int prio) {
    for (const auto& [jf, ji] : d.pit_joiners) {
      router_.pit().add_face(ji.name, jf, now_, sc_.pit_timeout_s, ji.id);
      log_.append(now_, record_kind::pit_joiner, static_cast<int>(jf), ji.name.str(),
                  "id=" + std::to_string(ji.id) + " prio=" + std::to_string(prio));
    }
  }

  // ---- publisher side ----
  void dispatch(ev_interest_at_publisher& e) {
    const auto& pub = sc_.publishers[e.pub];
    response_plan plan;
    try {
      plan = publisher_respond(pub, sc_.catalog, e.in.name, now_, seed_);
    } catch (const error& err) {
      if (err.code() != errc::no_such_content) throw;
      log_.append(now_, record_kind::pub_no_content, static_cast<int>(pub.face),
                  e.in.name.str(), "id=" + std::to_string(e.in.id));
      return;
    }
    log_.append(now_, record_kind::publisher_respond, static_cast<int>(pub.face),
                e.in.name.str(),
                "req=" + std::to_string(e.in.id) + " size=" + std::to_string(plan.size_bytes) +
                    " chunks=" + std::to_string(plan.chunk_count));
    std::uint64_t tid = next_train_++;
    trains_.emplace(tid, train{e.in.name, plan.chunk_bytes, plan.chunk_count, plan.size_bytes,
                               e.in.id, pub.face, false, {}});
    schedule(plan.first_emit_at, ev_chunk_emit{tid, 0});
  }

  void dispatch(ev_chunk_emit& e) {
    auto it = trains_.find(e.train);
    if (it == trains_.end()) return;
    train& t = it->second;

    data_chunk chunk;
    chunk.name = chunk_name(t.name, e.index);
    chunk.chunk_index = e.index;
    chunk.chunk_count = t.chunk_count;
    chunk.nominal_chunk_bytes = t.chunk_bytes;
    chunk.payload_size = e.index + 1 == t.chunk_count
                             ? t.total_bytes - std::uint64_t(t.chunk_count - 1) * t.chunk_bytes
                             : t.chunk_bytes;
    chunk.request_id = t.request_id;

    link& l = t.from_cs ? downlink(t.source_face) : uplink(t.source_face);
    auto tr = l.transmit(chunk.payload_size, now_);
    sim_time next_emit;
    if (tr.dropped) {
      log_.append(now_, record_kind::link_drop, static_cast<int>(t.source_face),
                  chunk.name.str(),
                  std::string("dir=") + (t.from_cs ? "down" : "up") + " kind=chunk req=" +
                      std::to_string(t.request_id) + " idx=" + std::to_string(e.index));
      next_emit = now_ + l.serialization_time(chunk.payload_size);
    } else {
      if (t.from_cs)
        schedule(tr.arrival, ev_chunk_at_consumer{chunk, t.source_face, t.ids});
      else
        schedule(tr.arrival, ev_chunk_at_router{std::move(chunk), t.source_face});
      next_emit = tr.serialization_end;
    }
    if (e.index + 1 < t.chunk_count)
      schedule(next_emit, ev_chunk_emit{e.train, e.index + 1});
    else
      trains_.erase(it);
  }

  // ---- data path at the router ----
  void dispatch(ev_chunk_at_router& e) {
    const data_chunk& chunk = e.chunk;
    std::string base = "req=" + std::to_string(chunk.request_id) +
                       " idx=" + std::to_string(chunk.chunk_index) +
                       " n=" + std::to_string(chunk.chunk_count);
    auto action = router_.on_data_arrival(chunk, now_);
    if (auto* dis = std::get_if<discard>(&action)) {
      log_.append(now_, record_kind::data_discarded, static_cast<int>(e.from), chunk.name.str(),
                  base + " reason=" +
                      (dis->reason == discard_reason::duplicate ? "duplicate" : "unsolicited"));
      return;
    }
    auto& del = std::get<deliver>(action);
    std::vector<std::uint64_t> all_ids;
    std::map<face_id, std::vector<std::uint64_t>> by_face;
    for (const auto& r : del.requesters) {
      all_ids.push_back(r.interest_id);
      by_face[r.face].push_back(r.interest_id);
    }
    log_.append(now_, record_kind::chunk_arrives, static_cast<int>(e.from), chunk.name.str(),
                base + " ids=" + id_list(all_ids));
    if (del.cached) {
      content_name content = content_of_chunk(chunk.name);
      log_.append(now_, record_kind::content_cached, static_cast<int>(e.from), content.str(),
                  "req=" + std::to_string(chunk.request_id) +
                      (del.evicted ? " evicted=" + del.evicted->name.str() : ""));
    }
    for (auto& [face, ids] : by_face) {
      auto tr = downlink(face).transmit(chunk.payload_size, now_);
      if (tr.dropped) {
        log_.append(now_, record_kind::link_drop, static_cast<int>(face), chunk.name.str(),
                    "dir=down kind=chunk ids=" + id_list(ids));
        continue;
      }
      schedule(tr.arrival, ev_chunk_at_consumer{chunk, face, std::move(ids)});
    }
  }

  void dispatch(ev_chunk_at_consumer& e) {
    log_.append(now_, record_kind::chunk_delivered, static_cast<int>(e.face), e.chunk.name.str(),
                "ids=" + id_list(e.ids) + " idx=" + std::to_string(e.chunk.chunk_index));
  }

  void dispatch(ev_pit_sweep&) {
    for (const auto& entry : router_.pit().expire(now_)) {
      std::vector<std::uint64_t> ids;
      for (const auto& r : entry.requesters) ids.push_back(r.interest_id);
      log_.append(now_, record_kind::pit_expired, -1, entry.name.str(), "ids=" + id_list(ids));
    }
  }

  // Replays a cached record to one consumer face, paced by that face's link.
  void start_cs_train(const content_record& rec, face_id face, std::vector<std::uint64_t> ids) {
    std::uint64_t tid = next_train_++;
    train t;
    t.name = rec.name;
    t.chunk_bytes = rec.chunk_bytes ? rec.chunk_bytes : rec.total_size;
    t.chunk_count = rec.chunk_count ? rec.chunk_count : 1;
    t.total_bytes = rec.total_size;
    t.source_face = face;
    t.from_cs = true;
    t.ids = std::move(ids);
    trains_.emplace(tid, std::move(t));
    schedule(now_, ev_chunk_emit{tid, 0});
  }

  scenario sc_;
  std::uint64_t seed_;
  router router_;
  priority_table table_;
  workload workload_;
  rng sched_rng_;
  event_log log_;

  std::priority_queue<event, std::vector<event>, event_after> events_;
  std::uint64_t seq_ = 0;
  sim_time now_ = 0.0;

  std::map<face_id, face_links> links_;
  std::map<face_id, std::size_t> pub_by_face_;
  std::set<face_id> consumer_faces_;
  std::map<std::uint64_t, train> trains_;
  std::uint64_t next_train_ = 0;

  std::size_t proposals_ = 0;
  std::size_t acks_ = 0;
  bool table_installed_ = false;
  bool cycle_pending_ = false;
  cycle_observer observer_;
};

// Runs one simulation and returns its event log.
inline event_log run(const scenario& sc, std::uint64_t seed) {
  engine e(sc, seed);
  return e.run();
}

}  // namespace ccnsim
