// Run metrics derived from an event log: per-priority mean queuing delay,
// per-priority mean content retrieval delay, interest satisfaction ratio,
// and the outcome breakdown. The log is the single source of truth, so
// recomputing from a persisted TSV reproduces the online values exactly.
//
// Definitions:
//   * queuing delay: selection instant minus the instant the interest became
//     the head of its queue. Sampled for forwarded, aggregated, tie-joined,
//     and selection-time cache-hit interests.
//   * retrieval delay: first chunk arrival at the router minus the forward
//     instant, per satisfied forwarded interest.
//   * satisfaction: an interest counts as satisfied once its consumer face
//     receives the first content chunk.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccnsim/error.hpp"
#include "ccnsim/event_log.hpp"

namespace ccnsim {

struct priority_stat {
  double mean = 0.0;
  std::uint64_t samples = 0;
};

struct run_metrics {
  std::map<int, priority_stat> queuing_delay;    // priority -> mean seconds
  std::map<int, priority_stat> retrieval_delay;  // priority -> mean seconds
  double satisfaction_ratio = 0.0;
  double generated = 0.0;
  double satisfied = 0.0;
  double expired = 0.0;
  double dropped = 0.0;
  double pending = 0.0;
};

inline run_metrics compute_metrics(const event_log& log, bool include_joiners = true) {
  struct gen_info {
    int priority = 0;
  };
  std::map<std::uint64_t, gen_info> generated;
  std::map<std::uint64_t, sim_time> head_at;
  std::map<std::uint64_t, sim_time> forwarded_at;
  std::map<std::uint64_t, int> forwarded_prio;
  std::set<std::uint64_t> satisfied, expired, dropped, retrieved;
  std::set<int> domain;

  std::map<int, std::pair<double, std::uint64_t>> queuing_acc, retrieval_acc;

  auto queue_sample = [&](const log_record& r) {
    auto id = detail_u64(r.detail, "id");
    auto prio = detail_u64(r.detail, "prio");
    if (!id || !prio) return;
    auto head = head_at.find(*id);
    if (head == head_at.end()) return;
    auto& acc = queuing_acc[static_cast<int>(*prio)];
    acc.first += r.time - head->second;
    acc.second += 1;
  };

  for (const auto& r : log.records()) {
    switch (r.kind) {
      case record_kind::table_entry:
        if (auto p = detail_u64(r.detail, "prio")) domain.insert(static_cast<int>(*p));
        break;
      case record_kind::interest_generated:
        if (auto id = detail_u64(r.detail, "id")) {
          int prio = static_cast<int>(detail_u64(r.detail, "prio").value_or(0));
          generated[*id] = {prio};
        }
        break;
      case record_kind::head_of_queue:
        if (auto id = detail_u64(r.detail, "id")) head_at[*id] = r.time;
        break;
      case record_kind::interest_forwarded:
        if (auto id = detail_u64(r.detail, "id")) {
          forwarded_at[*id] = r.time;
          forwarded_prio[*id] = static_cast<int>(detail_u64(r.detail, "prio").value_or(0));
        }
        queue_sample(r);
        break;
      case record_kind::pit_aggregated:
        queue_sample(r);
        break;
      case record_kind::pit_joiner:
        if (include_joiners) queue_sample(r);
        break;
      case record_kind::cs_hit:
        if (detail_get(r.detail, "at") == "selection") queue_sample(r);
        break;
      case record_kind::chunk_arrives:
        for (std::uint64_t id : detail_id_list(r.detail, "ids")) {
          if (retrieved.count(id)) continue;
          auto f = forwarded_at.find(id);
          if (f == forwarded_at.end() || r.time < f->second) continue;
          retrieved.insert(id);
          auto& acc = retrieval_acc[forwarded_prio[id]];
          acc.first += r.time - f->second;
          acc.second += 1;
        }
        break;
      case record_kind::chunk_delivered:
        for (std::uint64_t id : detail_id_list(r.detail, "ids")) satisfied.insert(id);
        break;
      case record_kind::pit_expired:
        for (std::uint64_t id : detail_id_list(r.detail, "ids")) expired.insert(id);
        break;
      case record_kind::no_route_drop:
        if (auto id = detail_u64(r.detail, "id")) dropped.insert(*id);
        break;
      default:
        break;
    }
  }

  if (generated.empty()) throw error(errc::empty_log, "no interests generated");

  run_metrics m;
  m.generated = static_cast<double>(generated.size());
  for (const auto& [id, info] : generated) {
    if (satisfied.count(id))
      m.satisfied += 1;
    else if (expired.count(id))
      m.expired += 1;
    else if (dropped.count(id))
      m.dropped += 1;
    else
      m.pending += 1;
  }
  m.satisfaction_ratio = m.satisfied / m.generated;

  for (int p : domain) {
    m.queuing_delay[p];
    m.retrieval_delay[p];
  }
  for (const auto& [p, acc] : queuing_acc)
    m.queuing_delay[p] = {acc.second ? acc.first / acc.second : 0.0, acc.second};
  for (const auto& [p, acc] : retrieval_acc)
    m.retrieval_delay[p] = {acc.second ? acc.first / acc.second : 0.0, acc.second};
  return m;
}

// Per-priority means restricted to priorities that actually have samples.
inline std::map<int, double> queuing_delay_by_priority(const event_log& log,
                                                       bool include_joiners = true) {
  std::map<int, double> out;
  for (const auto& [p, s] : compute_metrics(log, include_joiners).queuing_delay)
    if (s.samples) out[p] = s.mean;
  return out;
}

inline std::map<int, double> retrieval_delay_by_priority(const event_log& log) {
  std::map<int, double> out;
  for (const auto& [p, s] : compute_metrics(log).retrieval_delay)
    if (s.samples) out[p] = s.mean;
  return out;
}

inline double satisfaction_ratio(const event_log& log) {
  return compute_metrics(log).satisfaction_ratio;
}

// Arithmetic mean per field over runs. Every run must cover the same
// priority domain. Delay means average the run means of runs that have
// samples; `samples` accumulates the pooled count.
inline run_metrics aggregate(const std::vector<run_metrics>& runs) {
  if (runs.empty()) throw error(errc::empty_log, "no runs to aggregate");
  const auto& first = runs.front();
  for (const auto& r : runs) {
    auto same_keys = [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return false;
      auto it = b.begin();
      for (const auto& [k, v] : a) {
        if (it->first != k) return false;
        ++it;
      }
      return true;
    };
    if (!same_keys(r.queuing_delay, first.queuing_delay) ||
        !same_keys(r.retrieval_delay, first.retrieval_delay))
      throw error(errc::mismatched_domains, "runs cover different priority domains");
  }

  run_metrics agg;
  auto fold = [&](auto getter) {
    std::map<int, priority_stat> out;
    for (const auto& [p, _] : getter(first)) {
      double sum = 0.0;
      std::uint64_t contributing = 0, samples = 0;
      for (const auto& r : runs) {
        const priority_stat& s = getter(r).at(p);
        if (s.samples) {
          sum += s.mean;
          ++contributing;
          samples += s.samples;
        }
      }
      out[p] = {contributing ? sum / contributing : 0.0, samples};
    }
    return out;
  };
  agg.queuing_delay = fold([](const run_metrics& r) -> const auto& { return r.queuing_delay; });
  agg.retrieval_delay =
      fold([](const run_metrics& r) -> const auto& { return r.retrieval_delay; });
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    agg.satisfaction_ratio += r.satisfaction_ratio / n;
    agg.generated += r.generated / n;
    agg.satisfied += r.satisfied / n;
    agg.expired += r.expired / n;
    agg.dropped += r.dropped / n;
    agg.pending += r.pending / n;
  }
  return agg;
}

}  // namespace ccnsim
