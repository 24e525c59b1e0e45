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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qmlhcs/core/error.hpp"

namespace qmlhcs {

using TelemetryValue = std::variant<double, std::string>;
using TelemetryContext = std::map<std::string, TelemetryValue>;

/// r = (tau, sigma, xi): timestamp in seconds since the Unix epoch, event
/// label, and event context.
struct TelemetryRecord {
  double tau = 0.0;
  std::string sigma;
  TelemetryContext xi;

  friend bool operator==(const TelemetryRecord&, const TelemetryRecord&) = default;
};

inline nlohmann::json to_json(const TelemetryRecord& record) {
  nlohmann::json xi = nlohmann::json::object();
  for (const auto& [key, value] : record.xi) {
    std::visit([&xi, &key](const auto& v) { xi[key] = v; }, value);
  }
  return {{"tau", record.tau}, {"sigma", record.sigma}, {"xi", std::move(xi)}};
}

inline TelemetryRecord record_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("tau") || !doc.contains("sigma") || !doc.contains("xi")) {
    throw Error(ErrorKind::MalformedLine, "record needs tau, sigma and xi");
  }
  if (!doc["tau"].is_number() || !doc["sigma"].is_string() || !doc["xi"].is_object()) {
    throw Error(ErrorKind::MalformedLine, "record fields have the wrong types");
  }
  TelemetryRecord record{doc["tau"].get<double>(), doc["sigma"].get<std::string>(), {}};
  for (const auto& [key, value] : doc["xi"].items()) {
    if (value.is_number()) {
      record.xi.emplace(key, value.get<double>());
    } else if (value.is_string()) {
      record.xi.emplace(key, value.get<std::string>());
    } else {
      throw Error(ErrorKind::MalformedLine, "context value '" + key + "' must be a number or a string");
    }
  }
  return record;
}

/// In-memory telemetry buffer with JSONL persistence. Single writer;
/// readers get a snapshot copy.
class TelemetryLogger {
 public:
  using Clock = std::function<double()>;

  static double wall_clock_seconds() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    return std::chrono::duration<double>(now).count();
  }

  explicit TelemetryLogger(Clock clock = wall_clock_seconds) : clock_(std::move(clock)) {}

  /// Stamps and buffers a record. Timestamps never decrease within one
  /// logger even if the wall clock steps back.
  TelemetryRecord log_event(std::string sigma, TelemetryContext xi = {}) {
    if (sigma.empty()) throw Error(ErrorKind::EmptyLabel, "telemetry label must be nonempty");
    for (const auto& [key, value] : xi) {
      if (const double* d = std::get_if<double>(&value); d != nullptr && !std::isfinite(*d)) {
        throw Error(ErrorKind::NonFinite, "telemetry value '" + key + "' is not finite");
      }
    }
    std::lock_guard lock(mutex_);
    const double tau = std::max(clock_(), last_tau_);
    last_tau_ = tau;
    records_.push_back(TelemetryRecord{tau, std::move(sigma), std::move(xi)});
    return records_.back();
  }

  /// Appends an already-stamped record (replay, tests). Same ordering rule.
  void append(TelemetryRecord record) {
    if (record.sigma.empty()) throw Error(ErrorKind::EmptyLabel, "telemetry label must be nonempty");
    std::lock_guard lock(mutex_);
    last_tau_ = std::max(last_tau_, record.tau);
    records_.push_back(std::move(record));
  }

  std::vector<TelemetryRecord> records() const {
    std::lock_guard lock(mutex_);
    return records_;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
  }

  /// One JSON object per line, buffer order.
  void flush_jsonl(std::ostream& sink) const {
    std::lock_guard lock(mutex_);
    for (const auto& r : records_) sink << to_json(r).dump() << '\n';
    sink.flush();
    if (!sink) throw Error(ErrorKind::IoError, "telemetry sink write failed");
  }

  void flush_jsonl(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + path);
    flush_jsonl(out);
  }

 private:
  Clock clock_;
  mutable std::mutex mutex_;
  std::vector<TelemetryRecord> records_;
  double last_tau_ = -std::numeric_limits<double>::infinity();
};

inline std::vector<TelemetryRecord> load_jsonl(std::istream& source) {
  std::vector<TelemetryRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(source, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::MalformedLine, "line " + std::to_string(number) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorKind::MalformedLine, "line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<TelemetryRecord> load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  return load_jsonl(in);
}

inline std::string telemetry_filename(const std::string& run_id) { return "telemetry_" + run_id + ".jsonl"; }

}  // namespace qmlhcs
