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
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmlhcs/backend/statevector.hpp"
#include "qmlhcs/core/random.hpp"
#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

/// Sign convention for turning bit frequencies into per-wire values.
///   BitOnePositive: (1/N) sum c(b) (2 b_i - 1)   bit 1 -> +1
///   PauliZ:         (1/N) sum c(b) (1 - 2 b_i)   bit 0 -> +1, equals <Z_i>
enum class CountsConvention { BitOnePositive, PauliZ };

enum class Endianness { Wire0Left, Wire0Right };

inline std::string to_string(Endianness e) { return e == Endianness::Wire0Left ? "wire0-left" : "wire0-right"; }

inline Endianness parse_endianness(const std::string& text) {
  if (text == "wire0-left") return Endianness::Wire0Left;
  if (text == "wire0-right") return Endianness::Wire0Right;
  throw Error(ErrorKind::ParseError, "unknown endianness '" + text + "'");
}

/// Measurement histogram keyed by wire-0-leftmost bitstrings.
class BitstringCounts {
 public:
  BitstringCounts() = default;

  explicit BitstringCounts(std::map<std::string, std::uint64_t> counts) : counts_(std::move(counts)) {
    detail::require(!counts_.empty(), ErrorKind::InvalidConfig, "counts table must be nonempty");
    width_ = counts_.begin()->first.size();
    detail::require(width_ >= 1, ErrorKind::InconsistentKeyLength, "bitstrings must be nonempty");
    for (const auto& [key, count] : counts_) {
      if (key.size() != width_) {
        throw Error(ErrorKind::InconsistentKeyLength,
                    "key '" + key + "' has length " + std::to_string(key.size()) + ", expected " +
                        std::to_string(width_));
      }
      detail::require(key.find_first_not_of("01") == std::string::npos, ErrorKind::ParseError,
                      "key '" + key + "' is not a bitstring");
      detail::require(count >= 1, ErrorKind::InvalidConfig, "count for '" + key + "' must be positive");
      total_ += count;
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::uint64_t total() const noexcept { return total_; }
  const std::map<std::string, std::uint64_t>& counts() const noexcept { return counts_; }

  std::uint64_t count(const std::string& key) const {
    const auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }

  /// Rebuilds a table whose keys were written wire-0-rightmost.
  static BitstringCounts from_wire0_right(const std::map<std::string, std::uint64_t>& raw) {
    std::map<std::string, std::uint64_t> flipped;
    for (const auto& [key, count] : raw) flipped[std::string(key.rbegin(), key.rend())] += count;
    return BitstringCounts(std::move(flipped));
  }

  friend bool operator==(const BitstringCounts&, const BitstringCounts&) = default;

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::size_t width_ = 0;
  std::uint64_t total_ = 0;
};

/// Draws `shots` i.i.d. outcomes from |amp|^2 by inverse CDF with SplitMix64.
inline BitstringCounts sample_counts(const QuantumState& state, std::uint64_t shots, std::uint64_t seed) {
  detail::require(shots >= 1, ErrorKind::InvalidConfig, "shots must be >= 1");
  const auto probs = state.probabilities();
  std::vector<double> cdf(probs.size());
  double running = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    running += probs[i];
    cdf[i] = running;
  }

  std::vector<std::uint64_t> hits(probs.size(), 0);
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * running;
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx == cdf.size()) {
      idx = cdf.size() - 1;
      while (idx > 0 && probs[idx] == 0.0) --idx;
    }
    ++hits[idx];
  }

  const std::size_t wires = state.wires();
  std::map<std::string, std::uint64_t> table;
  for (std::size_t idx = 0; idx < hits.size(); ++idx) {
    if (hits[idx] == 0) continue;
    std::string key(wires, '0');
    for (std::size_t w = 0; w < wires; ++w) {
      if (idx & state.bit_mask(w)) key[w] = '1';
    }
    table.emplace(std::move(key), hits[idx]);
  }
  return BitstringCounts(std::move(table));
}

/// Per-wire estimate from a counts table. Sums are accumulated as exact
/// integers before the single division by N.
inline StateVector counts_to_expectations(const BitstringCounts& counts, CountsConvention convention) {
  detail::require(counts.total() >= 1, ErrorKind::InvalidConfig, "counts table is empty");
  const std::size_t width = counts.width();
  std::vector<std::int64_t> signed_sums(width, 0);
  for (const auto& [key, c] : counts.counts()) {
    detail::require_same_size(width, key.size(), "bitstring key", ErrorKind::InconsistentKeyLength);
    const auto n = static_cast<std::int64_t>(c);
    for (std::size_t i = 0; i < width; ++i) signed_sums[i] += (key[i] == '1') ? n : -n;
  }
  const double total = static_cast<double>(counts.total());
  std::vector<double> out(width);
  for (std::size_t i = 0; i < width; ++i) {
    const double one_positive = static_cast<double>(signed_sums[i]) / total;
    out[i] = convention == CountsConvention::BitOnePositive ? one_positive : -one_positive;
  }
  return StateVector(std::move(out));
}

/// {"endianness": "...", "counts": {bitstring: count}}. Keys are written in
/// the requested orientation.
inline nlohmann::json counts_to_json(const BitstringCounts& counts, Endianness endianness = Endianness::Wire0Left) {
  nlohmann::json table = nlohmann::json::object();
  for (const auto& [key, c] : counts.counts()) {
    table[endianness == Endianness::Wire0Left ? key : std::string(key.rbegin(), key.rend())] = c;
  }
  return nlohmann::json{{"endianness", to_string(endianness)}, {"counts", std::move(table)}};
}

/// Accepts the nested form written by counts_to_json, or a flat object whose
/// non-"endianness" members are bitstring counts. Missing endianness means
/// wire0-left.
inline BitstringCounts counts_from_json(const nlohmann::json& doc) {
  detail::require(doc.is_object(), ErrorKind::ParseError, "counts document must be a JSON object");
  Endianness endianness = Endianness::Wire0Left;
  if (doc.contains("endianness")) {
    detail::require(doc["endianness"].is_string(), ErrorKind::ParseError, "endianness must be a string");
    endianness = parse_endianness(doc["endianness"].get<std::string>());
  }
  const nlohmann::json& table = doc.contains("counts") ? doc["counts"] : doc;
  detail::require(table.is_object(), ErrorKind::ParseError, "counts must be a JSON object");

  std::map<std::string, std::uint64_t> raw;
  for (const auto& [key, value] : table.items()) {
    if (&table == &doc && key == "endianness") continue;
    detail::require(value.is_number_unsigned() || (value.is_number_integer() && value.get<std::int64_t>() > 0),
                    ErrorKind::ParseError, "count for '" + key + "' must be a positive integer");
    raw[key] = value.get<std::uint64_t>();
  }
  return endianness == Endianness::Wire0Left ? BitstringCounts(std::move(raw))
                                             : BitstringCounts::from_wire0_right(raw);
}

}  // namespace qmlhcs
