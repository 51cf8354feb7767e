// Copyright 2026 The kgforge Authors
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

#include "kgforge/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_sinks.h>

namespace kgforge {

namespace {

spdlog::level::level_enum level_from_env() {
  const char* value = std::getenv("KGFORGE_LOG");
  if (value == nullptr) return spdlog::level::info;
  const std::string_view v(value);
  if (v == "error") return spdlog::level::err;
  if (v == "warn") return spdlog::level::warn;
  if (v == "debug") return spdlog::level::debug;
  return spdlog::level::info;
}

}  // namespace

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto l = std::make_shared<spdlog::logger>("kgforge", sink);
    l->set_level(level_from_env());
    l->set_pattern("[%l] %v");
    return l;
  }();
  return *instance;
}

}  // namespace kgforge
