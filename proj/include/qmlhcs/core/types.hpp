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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmlhcs/core/error.hpp"

namespace qmlhcs {

namespace detail {

inline void require_finite(std::span<const double> values, std::string_view what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::NonFinite,
                  std::string(what) + ": element " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace detail

/// Present state S_t: a nonempty vector of finite reals.
class StateVector {
 public:
  StateVector() = default;

  explicit StateVector(std::vector<double> values) : values_(std::move(values)) {
    detail::require(!values_.empty(), ErrorKind::DimensionMismatch, "state vector must be nonempty");
    detail::require_finite(values_, "state vector");
  }

  StateVector(std::initializer_list<double> values) : StateVector(std::vector<double>(values)) {}

  static StateVector filled(std::size_t dim, double value) {
    return StateVector(std::vector<double>(dim, value));
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<double> values_;
};

/// K candidate futures stored row-major as a K x D matrix.
class FutureSet {
 public:
  FutureSet() = default;

  FutureSet(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    detail::require(rows_ >= 1 && cols_ >= 1, ErrorKind::DimensionMismatch,
                    "future set needs at least one row and one column");
    detail::require_same_size(rows_ * cols_, data_.size(), "future set storage");
    detail::require_finite(data_, "future set");
  }

  explicit FutureSet(const std::vector<std::vector<double>>& rows) {
    detail::require(!rows.empty(), ErrorKind::DimensionMismatch, "future set needs at least one row");
    rows_ = rows.size();
    cols_ = rows.front().size();
    detail::require(cols_ >= 1, ErrorKind::DimensionMismatch, "future set rows must be nonempty");
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      detail::require_same_size(cols_, row.size(), "future set row length");
      data_.insert(data_.end(), row.begin(), row.end());
    }
    detail::require_finite(data_, "future set");
  }

  FutureSet(std::initializer_list<std::initializer_list<double>> rows)
      : FutureSet(std::vector<std::vector<double>>(rows.begin(), rows.end())) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t k, std::size_t j) const { return data_[k * cols_ + j]; }

  std::span<const double> row(std::size_t k) const {
    return std::span<const double>(data_).subspan(k * cols_, cols_);
  }

  std::span<const double> data() const noexcept { return data_; }

  void append_row(std::span<const double> row) {
    detail::require_same_size(cols_, row.size(), "appended row", ErrorKind::PerturbationOutputDimMismatch);
    detail::require_finite(row, "appended row");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  friend bool operator==(const FutureSet&, const FutureSet&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct BackendConfig {
  std::size_t dim = 1;
  std::size_t branches = 2;
  std::optional<std::uint64_t> shots;  // empty means analytic
  std::size_t depth = 1;
  std::uint64_t seed = 0;

  void validate() const {
    detail::require(dim >= 1, ErrorKind::InvalidConfig, "dim must be >= 1");
    detail::require(branches >= 2, ErrorKind::InvalidConfig, "branches must be >= 2");
    detail::require(depth >= 1, ErrorKind::InvalidConfig, "depth must be >= 1");
    detail::require(!shots || *shots >= 1, ErrorKind::InvalidConfig, "shots must be >= 1");
  }

  friend bool operator==(const BackendConfig&, const BackendConfig&) = default;
};

struct BackendCapabilities {
  bool analytic = false;
  bool sampled = false;
  bool deterministic = false;

  bool valid() const noexcept { return analytic || sampled; }
};

using Diagnostics = std::map<std::string, double>;

/// Result of one hypercausal step: (S_t, F_t, S_hat_{t+1}) plus bookkeeping.
struct TriadicOutput {
  StateVector state;
  FutureSet futures;
  StateVector representative;
  std::string policy;
  std::optional<StateVector> previous;
  Diagnostics diagnostics;
};

inline double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

/// Per-dimension center mean(F, 0), summed in row order.
inline std::vector<double> column_mean(const FutureSet& futures) {
  std::vector<double> center(futures.cols(), 0.0);
  for (std::size_t k = 0; k < futures.rows(); ++k) {
    for (std::size_t j = 0; j < futures.cols(); ++j) center[j] += futures(k, j);
  }
  const double count = static_cast<double>(futures.rows());
  for (double& c : center) c /= count;
  return center;
}

}  // namespace qmlhcs
