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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qmlhcs/core/error.hpp"

namespace qmlhcs {

/// Name-keyed factory table. Names are case-sensitive and unique; listing
/// follows registration order. Lookups are const and touch no global state.
template <class Factory, class Metadata>
class Registry {
 public:
  struct Entry {
    std::string name;
    Factory factory;
    Metadata metadata;
  };

  explicit Registry(ErrorKind unknown_kind = ErrorKind::UnknownName) : unknown_kind_(unknown_kind) {}

  Registry& add(std::string name, Factory factory, Metadata metadata = {}) {
    detail::require(!name.empty(), ErrorKind::InvalidConfig, "registry name must be nonempty");
    if (find(name) != nullptr) throw Error(ErrorKind::DuplicateName, "'" + name + "' is already registered");
    entries_.push_back(Entry{std::move(name), std::move(factory), std::move(metadata)});
    return *this;
  }

  const Entry* find(const std::string& name) const noexcept {
    for (const auto& entry : entries_) {
      if (entry.name == name) return &entry;
    }
    return nullptr;
  }

  const Entry& at(const std::string& name) const {
    const Entry* entry = find(name);
    if (entry == nullptr) throw Error(unknown_kind_, "'" + name + "' is not registered");
    return *entry;
  }

  bool contains(const std::string& name) const noexcept { return find(name) != nullptr; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& entry : entries_) out.push_back(entry.name);
    return out;
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  ErrorKind unknown_kind_;
  std::vector<Entry> entries_;
};

}  // namespace qmlhcs
