// Copyright 2026 The permvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Flag <-> JSON-config binding for the command-line tool. Every option has a
// dotted key ("ansatz.depth"); explicit flags win over the per-command
// config section, which wins over top-level config keys, which win over the
// built-in default.

#pragma once

#include <CLI11.hpp>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace permvqe::cli {

/// Bad flags, config or option values; maps to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const nlohmann::json* find_path(const nlohmann::json& j, const std::string& key) {
  const nlohmann::json* cur = &j;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!cur->is_object() || !cur->contains(part)) return nullptr;
    cur = &(*cur)[part];
    if (dot == std::string::npos) return cur;
    start = dot + 1;
  }
}

inline void set_path(nlohmann::json& j, const std::string& key, nlohmann::json value) {
  nlohmann::json* cur = &j;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    if (dot == std::string::npos) {
      (*cur)[key.substr(start)] = std::move(value);
      return;
    }
    cur = &(*cur)[key.substr(start, dot - start)];
    start = dot + 1;
  }
}

template <class T>
nlohmann::json to_json_value(const T& v) {
  return nlohmann::json(v);
}

template <class T>
nlohmann::json to_json_value(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
void from_json_value(const nlohmann::json& j, T& out) {
  out = j.get<T>();
}

template <class T>
void from_json_value(const nlohmann::json& j, std::optional<T>& out) {
  if (j.is_null()) {
    out.reset();
  } else {
    out = j.get<T>();
  }
}

}  // namespace detail

class Settings {
 public:
  template <class T>
  CLI::Option* bind(CLI::App* app, const std::string& flags, T& field, const std::string& key, const std::string& help) {
    CLI::Option* opt = app->add_option(flags, field, help);
    if constexpr (!requires { field.has_value(); }) opt->capture_default_str();
    add_entry(key, opt, field);
    return opt;
  }

  CLI::Option* bind_flag(CLI::App* app, const std::string& flags, bool& field, const std::string& key,
                         const std::string& help) {
    CLI::Option* opt = app->add_flag(flags, field, help);
    add_entry(key, opt, field);
    return opt;
  }

  /// Fills options not given on the command line from `cfg`.
  void apply(const nlohmann::json& cfg, const std::string& section) const {
    for (const auto& e : entries_) {
      if (e.opt->count() > 0) continue;
      const nlohmann::json* v = nullptr;
      if (const auto* sec = detail::find_path(cfg, section); sec && sec->is_object()) v = detail::find_path(*sec, e.key);
      if (!v) v = detail::find_path(cfg, e.key);
      if (!v) continue;
      try {
        e.set(*v);
      } catch (const nlohmann::json::exception& ex) {
        throw UsageError("config key '" + e.key + "': " + ex.what());
      }
    }
  }

  void resolved_into(nlohmann::json& out) const {
    for (const auto& e : entries_) detail::set_path(out, e.key, e.get());
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> k;
    for (const auto& e : entries_) k.push_back(e.key);
    return k;
  }

 private:
  struct Entry {
    std::string key;
    CLI::Option* opt;
    std::function<void(const nlohmann::json&)> set;
    std::function<nlohmann::json()> get;
  };

  template <class T>
  void add_entry(const std::string& key, CLI::Option* opt, T& field) {
    entries_.push_back({key, opt, [&field](const nlohmann::json& j) { detail::from_json_value(j, field); },
                        [&field] { return detail::to_json_value(field); }});
  }

  std::vector<Entry> entries_;
};

/// Rejects config leaves that no command knows, so typos do not pass
/// silently. Objects named after a command are checked against that
/// command's keys.
inline void check_config_keys(const nlohmann::json& cfg, const std::set<std::string>& known,
                              const std::set<std::string>& sections) {
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  std::function<void(const nlohmann::json&, const std::string&)> walk = [&](const nlohmann::json& j,
                                                                           const std::string& prefix) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (prefix.empty() && sections.count(it.key()) && it->is_object()) {
        walk(*it, "");
        continue;
      }
      if (known.count(key)) continue;
      if (it->is_object()) {
        walk(*it, key);
        continue;
      }
      throw UsageError("unknown config key '" + key + "'");
    }
  };
  walk(cfg, "");
}

}  // namespace permvqe::cli
