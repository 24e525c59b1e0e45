// Copyright 2026 The qmlhcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qmlhcs/experiment/config.hpp"
#include "qmlhcs/experiment/experiment.hpp"
#include "qmlhcs/experiment/summary.hpp"
#include "qmlhcs/runtime/telemetry.hpp"

namespace qmlhcs {

inline constexpr std::string_view kEpochsHeader =
    "epoch,alpha,delta_alpha,loss_task,loss_cons,loss_coh,loss_total,mean_state,mean_future,phi,a,b,depth";
inline constexpr std::string_view kSummaryHeader = "epoch,mean_state,mean_future,delta_alpha,drift_proxy,phi,loss_coh";

/// Shortest decimal that parses back to the same double.
inline std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline double parse_real(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

inline void write_epochs_csv(std::ostream& out, const std::vector<EpochLog>& logs) {
  out << kEpochsHeader << '\n';
  for (const auto& r : logs) {
    out << r.epoch << ',' << format_real(r.alpha) << ',' << format_real(r.delta_alpha) << ','
        << format_real(r.loss_task) << ',' << format_real(r.loss_cons) << ',' << format_real(r.loss_coh) << ','
        << format_real(r.loss_total) << ',' << format_real(r.mean_state) << ',' << format_real(r.mean_future) << ','
        << format_real(r.phi) << ',' << format_real(r.a) << ',' << format_real(r.b) << ',' << r.depth << '\n';
  }
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline std::vector<EpochLog> read_epochs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kEpochsHeader) {
    throw Error(ErrorKind::ParseError, "epochs.csv header mismatch");
  }
  std::vector<EpochLog> logs;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 13) throw Error(ErrorKind::ParseError, "epochs.csv line " + std::to_string(number) + ": expected 13 fields");
    EpochLog r;
    r.epoch = static_cast<std::size_t>(parse_real(f[0]));
    r.alpha = parse_real(f[1]);
    r.delta_alpha = parse_real(f[2]);
    r.loss_task = parse_real(f[3]);
    r.loss_cons = parse_real(f[4]);
    r.loss_coh = parse_real(f[5]);
    r.loss_total = parse_real(f[6]);
    r.mean_state = parse_real(f[7]);
    r.mean_future = parse_real(f[8]);
    r.phi = parse_real(f[9]);
    r.a = parse_real(f[10]);
    r.b = parse_real(f[11]);
    r.depth = static_cast<std::size_t>(parse_real(f[12]));
    logs.push_back(r);
  }
  return logs;
}

/// Undefined entries are written as empty fields.
inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.epoch << ',' << format_real(r.mean_state) << ',' << format_real(r.mean_future) << ','
        << opt(r.delta_alpha) << ',' << opt(r.drift_proxy) << ',' << format_real(r.phi) << ','
        << format_real(r.loss_coh) << '\n';
  }
}

inline std::string default_run_id(const ExperimentConfig& config) {
  return to_string(config.backend) + "-seed" + std::to_string(config.seed);
}

struct RunArtifacts {
  std::filesystem::path epochs_csv;
  std::filesystem::path summary_csv;
  std::filesystem::path telemetry_jsonl;
  std::filesystem::path resolved_config;
};

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  return out;
}

}  // namespace detail

/// Runs the experiment and writes epochs.csv, summary.csv,
/// telemetry_<run-id>.jsonl and config.resolved.json into `dir`.
inline RunArtifacts run_to_directory(const ExperimentConfig& config, const std::filesystem::path& dir,
                                     const std::string& run_id) {
  std::filesystem::create_directories(dir);
  TelemetryLogger logger;
  logger.log_event("run_start", {{"run_id", run_id}, {"seed", static_cast<double>(config.seed)}});
  const auto logs = run_experiment(config, &logger);
  logger.log_event("run_end", {{"run_id", run_id}, {"epochs", static_cast<double>(logs.size())}});

  RunArtifacts paths{dir / "epochs.csv", dir / "summary.csv", dir / telemetry_filename(run_id),
                     dir / "config.resolved.json"};
  {
    auto out = detail::open_for_write(paths.epochs_csv);
    write_epochs_csv(out, logs);
  }
  {
    auto out = detail::open_for_write(paths.summary_csv);
    write_summary_csv(out, summarize(logs, config.summary_window));
  }
  logger.flush_jsonl(paths.telemetry_jsonl.string());
  {
    auto out = detail::open_for_write(paths.resolved_config);
    out << to_json(config).dump(2) << '\n';
  }
  return paths;
}

/// Recomputes summary.csv from an existing run directory.
inline std::vector<SummaryRow> summarize_directory(const std::filesystem::path& dir, std::optional<std::size_t> window) {
  std::ifstream in(dir / "epochs.csv");
  if (!in) throw Error(ErrorKind::IoError, "no epochs.csv in " + dir.string());
  const auto logs = read_epochs_csv(in);

  std::size_t w = 11;
  if (window) {
    w = *window;
  } else if (std::filesystem::exists(dir / "config.resolved.json")) {
    w = load_config((dir / "config.resolved.json").string()).summary_window;
  }
  const auto rows = summarize(logs, w);
  auto out = detail::open_for_write(dir / "summary.csv");
  write_summary_csv(out, rows);
  return rows;
}

}  // namespace qmlhcs
