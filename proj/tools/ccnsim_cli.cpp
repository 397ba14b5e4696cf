// ccnsim command line: run one simulation, replicate over seeds, report
// metrics from persisted logs, or validate a scenario file.
#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "ccnsim/metrics.hpp"
#include "ccnsim/report.hpp"
#include "ccnsim/simulation.hpp"

namespace fs = std::filesystem;
using namespace ccnsim;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_runtime = 2;

void print_summary(std::ostream& os, const run_metrics& m) {
  os << "generated=" << m.generated << " satisfied=" << m.satisfied << " expired=" << m.expired
     << " dropped=" << m.dropped << " pending=" << m.pending
     << " satisfaction=" << format_time(m.satisfaction_ratio) << "\n";
  os << "priority  queuing_delay_s  retrieval_delay_s\n";
  for (const auto& [p, q] : m.queuing_delay) {
    const auto& r = m.retrieval_delay.at(p);
    os << "  " << p << "        " << format_time(q.mean) << "        " << format_time(r.mean)
       << "\n";
  }
}

int cmd_run(const std::string& scenario_spec, std::uint64_t seed, bool seed_set,
            const std::string& log_out, const std::string& dump_tables) {
  scenario sc = scenario::load(scenario_spec);
  std::uint64_t run_seed = seed_set ? seed : sc.workload.seed;
  engine e(sc, run_seed);
  const event_log& log = e.run();

  std::ofstream out(log_out);
  if (!out) throw error(errc::io_error, "cannot write " + log_out);
  log.write_tsv(out);

  if (!dump_tables.empty()) {
    if (dump_tables == "-") {
      e.get_router().dump_tables(std::cout);
    } else {
      std::ofstream dt(dump_tables);
      if (!dt) throw error(errc::io_error, "cannot write " + dump_tables);
      e.get_router().dump_tables(dt);
    }
  }

  run_metrics m = compute_metrics(log);
  std::cout << "run: scenario=" << sc.name << " seed=" << run_seed << " log=" << log_out << "\n";
  print_summary(std::cout, m);
  return exit_ok;
}

int cmd_replicate(const std::string& scenario_spec, unsigned seeds, std::uint64_t base_seed,
                  const std::string& out_dir, unsigned jobs) {
  scenario sc = scenario::load(scenario_spec);
  sc.validate();
  fs::create_directories(out_dir);
  if (jobs == 0) jobs = std::min<unsigned>(seeds, 8);

  std::vector<std::uint64_t> all(seeds);
  for (unsigned i = 0; i < seeds; ++i) all[i] = base_seed + i;

  std::vector<std::string> written(seeds);
  for (unsigned begin = 0; begin < seeds; begin += jobs) {
    unsigned end = std::min(begin + jobs, seeds);
    std::vector<std::future<void>> batch;
    for (unsigned i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, [&, i] {
        event_log log = run(sc, all[i]);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "run_%04llu.tsv",
                      static_cast<unsigned long long>(all[i]));
        fs::path p = fs::path(out_dir) / buf;
        std::ofstream out(p);
        if (!out) throw error(errc::io_error, "cannot write " + p.string());
        log.write_tsv(out);
        written[i] = p.string();
      }));
    }
    for (auto& f : batch) f.get();
  }
  std::cout << "replicate: " << seeds << " runs of scenario " << sc.name << " -> " << out_dir
            << "\n";
  return exit_ok;
}

int cmd_report(const std::string& logs_dir, const std::string& csv_path,
               const std::string& plots_dir, bool exclude_joiners) {
  std::vector<fs::path> files;
  if (fs::is_directory(logs_dir))
    for (const auto& entry : fs::directory_iterator(logs_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".tsv")
        files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no logs found in " << logs_dir << "\n";
    return exit_config;
  }

  std::vector<std::pair<std::string, run_metrics>> runs;
  std::vector<run_metrics> metrics;
  std::vector<event_log> logs;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw error(errc::io_error, "cannot read " + f.string());
    logs.push_back(event_log::read_tsv(in));
    metrics.push_back(compute_metrics(logs.back(), !exclude_joiners));
    runs.emplace_back(f.stem().string(), metrics.back());
  }
  run_metrics agg = aggregate(metrics);

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw error(errc::io_error, "cannot write " + csv_path);
    write_metrics_csv(out, runs, agg);
  }
  if (!plots_dir.empty()) {
    fs::create_directories(plots_dir);
    // Timeline from the first log (one run's pattern); delay tables from the
    // whole aggregate.
    std::ofstream t(fs::path(plots_dir) / "timeline.csv");
    write_timeline_csv(t, logs.front());
    std::ofstream q(fs::path(plots_dir) / "queuing_delay.csv");
    write_delay_csv(q, agg.queuing_delay, "mean_queuing_delay_s");
    std::ofstream r(fs::path(plots_dir) / "retrieval_delay.csv");
    write_delay_csv(r, agg.retrieval_delay, "mean_retrieval_delay_s");
  }

  std::cout << "report: " << files.size() << " runs\n";
  print_summary(std::cout, agg);
  return exit_ok;
}

int cmd_validate(const std::string& scenario_spec) {
  scenario sc = scenario::load(scenario_spec);
  sc.validate();
  std::cout << "scenario " << sc.name << " ok: " << sc.consumers.size() << " consumers, "
            << sc.publishers.size() << " publishers, " << sc.catalog.size()
            << " catalog entries\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"content-priority forwarding simulator"};
  app.require_subcommand(1);

  std::string scenario_spec = "default";
  std::uint64_t seed = 0;
  std::string log_out = "run.tsv";
  std::string dump_tables;
  auto* run_cmd = app.add_subcommand("run", "run one simulation");
  run_cmd->add_option("--scenario", scenario_spec, "scenario file or 'default'");
  auto* seed_opt = run_cmd->add_option("--seed", seed, "workload seed");
  run_cmd->add_option("--log-out", log_out, "event log output path");
  run_cmd->add_option("--dump-tables", dump_tables, "dump CS/PIT/FIB tables ('-' for stdout)");

  unsigned seeds = 20;
  std::uint64_t base_seed = 1;
  std::string out_dir = "runs";
  unsigned jobs = 0;
  auto* rep_cmd = app.add_subcommand("replicate", "run many seeds");
  rep_cmd->add_option("--scenario", scenario_spec, "scenario file or 'default'");
  rep_cmd->add_option("--seeds", seeds, "number of seeded runs");
  rep_cmd->add_option("--base-seed", base_seed, "first seed");
  rep_cmd->add_option("--out", out_dir, "output directory for logs");
  rep_cmd->add_option("--jobs", jobs, "parallel runs (0 = auto)");

  std::string logs_dir = "runs";
  std::string csv_path = "metrics.csv";
  std::string plots_dir;
  bool exclude_joiners = false;
  auto* report_cmd = app.add_subcommand("report", "metrics from persisted logs");
  report_cmd->add_option("--logs", logs_dir, "directory of .tsv logs");
  report_cmd->add_option("--csv", csv_path, "metrics CSV output path");
  report_cmd->add_option("--plots", plots_dir, "directory for plot-ready tables");
  report_cmd->add_flag("--exclude-joiners", exclude_joiners,
                       "exclude tie-dropped interests from queuing delays");

  auto* validate_cmd = app.add_subcommand("validate", "check a scenario without running");
  validate_cmd->add_option("--scenario", scenario_spec, "scenario file or 'default'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed())
      return cmd_run(scenario_spec, seed, seed_opt->count() > 0, log_out, dump_tables);
    if (rep_cmd->parsed()) return cmd_replicate(scenario_spec, seeds, base_seed, out_dir, jobs);
    if (report_cmd->parsed()) return cmd_report(logs_dir, csv_path, plots_dir, exclude_joiners);
    if (validate_cmd->parsed()) return cmd_validate(scenario_spec);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case errc::invalid_scenario:
      case errc::priority_conflict:
      case errc::malformed_name:
      case errc::mismatched_domains:
        return exit_config;
      default:
        return exit_runtime;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_runtime;
  }
  return exit_ok;
}
