// Plot-ready CSV tables: per-run metrics, the interest timeline, and the
// delay-versus-priority summaries. Fixed columns, header row, times in
// seconds with six decimal places.
#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ccnsim/event_log.hpp"
#include "ccnsim/metrics.hpp"

namespace ccnsim {

inline void write_metrics_csv(std::ostream& os,
                              const std::vector<std::pair<std::string, run_metrics>>& runs,
                              const run_metrics& agg) {
  std::vector<int> levels;
  for (const auto& [p, _] : agg.queuing_delay) levels.push_back(p);

  os << "run,generated,satisfied,expired,dropped,pending,satisfaction_ratio";
  for (int p : levels) os << ",queuing_delay_p" << p;
  for (int p : levels) os << ",retrieval_delay_p" << p;
  os << "\n";

  auto row = [&](const std::string& label, const run_metrics& m) {
    os << label << ',' << m.generated << ',' << m.satisfied << ',' << m.expired << ','
       << m.dropped << ',' << m.pending << ',' << format_time(m.satisfaction_ratio);
    for (int p : levels) {
      auto it = m.queuing_delay.find(p);
      os << ',' << format_time(it != m.queuing_delay.end() ? it->second.mean : 0.0);
    }
    for (int p : levels) {
      auto it = m.retrieval_delay.find(p);
      os << ',' << format_time(it != m.retrieval_delay.end() ? it->second.mean : 0.0);
    }
    os << "\n";
  };
  for (const auto& [label, m] : runs) row(label, m);
  row("aggregate", agg);
}

// Timeline of one run: when each interest left the processing edge and when
// its first content chunk came back.
inline void write_timeline_csv(std::ostream& os, const event_log& log) {
  struct row {
    int priority = 0;
    sim_time forwarded_at = 0.0;
    sim_time first_chunk_at = -1.0;
  };
  std::map<std::uint64_t, row> rows;
  for (const auto& r : log.records()) {
    if (r.kind == record_kind::interest_forwarded) {
      auto id = detail_u64(r.detail, "id");
      if (!id) continue;
      rows[*id] = {static_cast<int>(detail_u64(r.detail, "prio").value_or(0)), r.time, -1.0};
    } else if (r.kind == record_kind::chunk_arrives) {
      for (std::uint64_t id : detail_id_list(r.detail, "ids")) {
        auto it = rows.find(id);
        if (it != rows.end() && it->second.first_chunk_at < 0 &&
            r.time >= it->second.forwarded_at)
          it->second.first_chunk_at = r.time;
      }
    }
  }
  os << "interest_id,priority,forwarded_at,first_chunk_at\n";
  for (const auto& [id, r] : rows) {
    os << id << ',' << r.priority << ',' << format_time(r.forwarded_at) << ',';
    if (r.first_chunk_at >= 0) os << format_time(r.first_chunk_at);
    os << "\n";
  }
}

inline void write_delay_csv(std::ostream& os, const std::map<int, priority_stat>& stats,
                            const std::string& column) {
  os << "priority," << column << ",samples\n";
  for (const auto& [p, s] : stats)
    os << p << ',' << format_time(s.mean) << ',' << s.samples << "\n";
}

}  // namespace ccnsim
