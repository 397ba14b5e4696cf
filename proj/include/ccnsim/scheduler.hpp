// Per-consumer interest queues at the router's processing edge and the
// priority check pointer that picks which head interest is serviced next.
//
// Selection rules, applied in order each cycle:
//   1. nothing to do (no agreed table, or all queues empty) -> no decision.
//   2. forced mode: while any queue's starvation counter sits at the
//      threshold, priority checking is suspended and those queues are served
//      one per cycle, in ascending order of the time each counter reached the
//      threshold (face id breaks ties). The set is frozen when the suspension
//      starts; queues reaching the threshold mid-suspension wait for the next
//      episode.
//   3. priority mode: among the head interests of non-empty queues, the
//      highest-priority content wins. Heads naming the same content as the
//      winner are a tie: one is forwarded (chosen uniformly at random) and
//      the rest are dropped from their queues as pit joiners, to be recorded
//      in the PIT against the same content. Distinct names within the same
//      announced prefix class are not a tie; the earliest head at the edge
//      wins. Two distinct prefix classes sharing a priority level indicate a
//      corrupted table and raise priority-conflict.
//   4. the serviced queues' counters reset to 0; every other non-empty,
//      non-suspended queue's counter increments by one, saturating at the
//      threshold. Empty queues never change.
//   5. queues whose head was removed stamp their successor's edge arrival.
//
// decide() is pure (it draws from the rng only to break a same-name tie);
// apply() performs the mutations. select_next() is the two glued together.
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ccnsim/error.hpp"
#include "ccnsim/packet.hpp"
#include "ccnsim/priority.hpp"
#include "ccnsim/rng.hpp"

namespace ccnsim {

struct scheduler_decision {
  enum class mode_t { priority, forced };

  mode_t mode = mode_t::priority;
  std::optional<std::pair<face_id, interest>> forwarded;
  // Heads dropped from their queues because a twin interest was forwarded;
  // their faces must still be recorded in the PIT for the same content.
  std::vector<std::pair<face_id, interest>> pit_joiners;
  // Queues still awaiting forced service after this decision.
  int forced_faces_pending = 0;

  // Bookkeeping consumed by apply(); post-state checks in tests cover these.
  std::vector<face_id> serviced_faces;
  std::vector<face_id> increment_faces;
  std::vector<face_id> freeze_forced_set;
};

class scheduler {
 public:
  explicit scheduler(int starvation_threshold = 25) : threshold_(starvation_threshold) {}

  int starvation_threshold() const { return threshold_; }

  void add_queue(face_id face) { queues_.try_emplace(face); }
  bool has_queue(face_id face) const { return queues_.count(face) != 0; }

  std::size_t queue_length(face_id face) const { return queue_at(face).items.size(); }
  int counter(face_id face) const { return queue_at(face).counter; }

  const interest* head(face_id face) const {
    const auto& q = queue_at(face);
    return q.items.empty() ? nullptr : &q.items.front();
  }

  bool all_empty() const {
    return std::all_of(queues_.begin(), queues_.end(),
                       [](const auto& kv) { return kv.second.items.empty(); });
  }

  // Appends at the tail, preserving consumer generation order. An interest
  // reaching the head gets its edge arrival stamped.
  void enqueue(face_id face, interest in, sim_time now) {
    auto it = queues_.find(face);
    if (it == queues_.end())
      throw error(errc::unknown_face, "no queue for face " + std::to_string(face));
    if (it->second.items.empty()) in.edge_arrival_at = now;
    it->second.items.push_back(std::move(in));
  }

  // Removes and returns the head; the successor becomes the new edge arrival.
  interest drop_head(face_id face, sim_time now) {
    auto it = queues_.find(face);
    if (it == queues_.end())
      throw error(errc::unknown_face, "no queue for face " + std::to_string(face));
    auto& q = it->second;
    if (q.items.empty())
      throw error(errc::empty_queue, "queue " + std::to_string(face) + " is empty");
    interest out = std::move(q.items.front());
    q.items.pop_front();
    if (!q.items.empty()) q.items.front().edge_arrival_at = now;
    return out;
  }

  std::optional<scheduler_decision> decide(const priority_table& priorities, rng& r) const {
    if (!priorities.agreed()) return std::nullopt;

    std::vector<face_id> non_empty;
    for (const auto& [face, q] : queues_)
      if (!q.items.empty()) non_empty.push_back(face);
    if (non_empty.empty()) return std::nullopt;

    if (auto forced = decide_forced(non_empty)) return forced;
    return decide_priority(non_empty, priorities, r);
  }

  void apply(const scheduler_decision& d, sim_time now) {
    if (!d.freeze_forced_set.empty()) forced_set_.assign(d.freeze_forced_set.begin(), d.freeze_forced_set.end());
    if (d.mode == scheduler_decision::mode_t::forced && !forced_set_.empty())
      forced_set_.erase(forced_set_.begin());

    if (d.forwarded) pop_head(d.forwarded->first, now);
    for (const auto& [face, _] : d.pit_joiners) pop_head(face, now);

    for (face_id face : d.serviced_faces) {
      auto& q = queues_.at(face);
      q.counter = 0;
    }
    for (face_id face : d.increment_faces) {
      auto& q = queues_.at(face);
      if (q.counter < threshold_) {
        ++q.counter;
        if (q.counter == threshold_) q.reached_threshold_at = now;
      }
    }
  }

  std::optional<scheduler_decision> select_next(const priority_table& priorities, rng& r,
                                                sim_time now) {
    auto d = decide(priorities, r);
    if (d) apply(*d, now);
    return d;
  }

 private:
  struct queue_state {
    std::deque<interest> items;
    int counter = 0;
    sim_time reached_threshold_at = 0.0;  // meaningful while counter == threshold
  };

  const queue_state& queue_at(face_id face) const {
    auto it = queues_.find(face);
    if (it == queues_.end())
      throw error(errc::unknown_face, "no queue for face " + std::to_string(face));
    return it->second;
  }

  void pop_head(face_id face, sim_time now) {
    auto& q = queues_.at(face);
    q.items.pop_front();
    if (!q.items.empty()) q.items.front().edge_arrival_at = now;
  }

  std::optional<scheduler_decision> decide_forced(const std::vector<face_id>& non_empty) const {
    std::vector<face_id> order;
    bool freezing = false;
    if (!forced_set_.empty()) {
      order = forced_set_;
    } else {
      for (const auto& [face, q] : queues_)
        if (!q.items.empty() && q.counter == threshold_) order.push_back(face);
      if (order.empty()) return std::nullopt;
      std::sort(order.begin(), order.end(), [this](face_id a, face_id b) {
        const auto& qa = queues_.at(a);
        const auto& qb = queues_.at(b);
        if (qa.reached_threshold_at != qb.reached_threshold_at)
          return qa.reached_threshold_at < qb.reached_threshold_at;
        return a < b;
      });
      freezing = true;
    }

    scheduler_decision d;
    d.mode = scheduler_decision::mode_t::forced;
    if (freezing) d.freeze_forced_set = order;
    face_id served = order.front();
    d.forwarded = {served, queues_.at(served).items.front()};
    d.forced_faces_pending = static_cast<int>(order.size()) - 1;
    d.serviced_faces = {served};
    for (face_id face : non_empty)
      if (face != served && std::find(order.begin(), order.end(), face) == order.end())
        d.increment_faces.push_back(face);
    return d;
  }

  std::optional<scheduler_decision> decide_priority(const std::vector<face_id>& non_empty,
                                                    const priority_table& priorities,
                                                    rng& r) const {
    struct candidate {
      face_id face;
      const interest* head;
      int priority;
      std::optional<content_name> prefix_class;
    };

    std::vector<candidate> heads;
    heads.reserve(non_empty.size());
    int best = -1;
    for (face_id face : non_empty) {
      const interest& h = queues_.at(face).items.front();
      candidate c{face, &h, 0, std::nullopt};
      if (auto m = priorities.match(h.name)) {
        c.priority = m->priority;
        c.prefix_class = m->prefix;
      }
      best = std::max(best, c.priority);
      heads.push_back(std::move(c));
    }

    std::vector<candidate> top;
    for (auto& c : heads)
      if (c.priority == best) top.push_back(c);

    // The unique-priority rule: one priority level maps to one prefix class.
    for (std::size_t i = 1; i < top.size(); ++i) {
      if (top[i].prefix_class != top[0].prefix_class)
        throw error(errc::priority_conflict,
                    "heads " + top[0].head->name.str() + " and " + top[i].head->name.str() +
                        " share priority " + std::to_string(best) +
                        " under different prefixes");
    }

    // Distinct names within the class are not a tie: the name whose earliest
    // holder has waited at the edge longest goes first.
    auto key = [](const candidate& c) {
      return std::make_pair(c.head->edge_arrival_at.value_or(c.head->created_at), c.face);
    };
    const candidate* lead = &top[0];
    for (std::size_t i = 1; i < top.size(); ++i)
      if (key(top[i]) < key(*lead)) lead = &top[i];
    std::vector<const candidate*> group;
    for (const auto& c : top)
      if (c.head->name == lead->head->name) group.push_back(&c);

    scheduler_decision d;
    d.mode = scheduler_decision::mode_t::priority;
    std::size_t winner = group.size() > 1 ? static_cast<std::size_t>(r.below(group.size())) : 0;
    d.forwarded = {group[winner]->face, *group[winner]->head};
    d.serviced_faces.push_back(group[winner]->face);
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i == winner) continue;
      d.pit_joiners.emplace_back(group[i]->face, *group[i]->head);
      d.serviced_faces.push_back(group[i]->face);
    }
    for (face_id face : non_empty)
      if (std::find(d.serviced_faces.begin(), d.serviced_faces.end(), face) ==
          d.serviced_faces.end())
        d.increment_faces.push_back(face);
    return d;
  }

  std::map<face_id, queue_state> queues_;
  std::vector<face_id> forced_set_;  // frozen service order during suspension
  int threshold_;
};

}  // namespace ccnsim
