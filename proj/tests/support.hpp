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

#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgforge/artifacts.hpp"
#include "kgforge/config.hpp"
#include "kgforge/evaluation.hpp"
#include "kgforge/kg.hpp"
#include "kgforge/synthetic.hpp"
#include "kgforge/training.hpp"

namespace kgforge::testing {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("kgforge-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Small config that trains in milliseconds.
inline ExperimentConfig quick_config(ModelKind kind, std::uint64_t seed = 7) {
  auto c = default_config(kind);
  c.embedding_dim = 8;
  c.num_epochs = 5;
  c.batch_size = 16;
  c.seed = seed;
  return c;
}

inline IndexedKG small_synthetic(std::size_t per_group = 5, std::size_t n = 120, std::uint64_t seed = 3) {
  return build_index(synthetic_kg({per_group, n, seed}));
}

/// The benchmark config used throughout: TransE, d=16, lr=0.01, margin=1.
inline ExperimentConfig benchmark_config(std::uint64_t seed = 0) {
  auto c = default_config(ModelKind::kTransE);
  c.embedding_dim = 16;
  c.learning_rate = 0.01;
  c.margin = 1.0;
  c.num_epochs = 200;
  c.batch_size = 8;
  c.split_ratio = 0.8;
  c.seed = seed;
  return c;
}

/// Split, train and evaluate: everything a bundle needs.
inline artifacts::ExperimentRecord make_record(const IndexedKG& kg, const ExperimentConfig& config) {
  auto sp = split(kg, config.split_ratio, config.seed);
  auto model = make_model(config.model_name);
  auto trained = train(sp.train, config);
  auto metrics = evaluate(*model, trained.params, sp.test.triples(), known_triples({&sp.train, &sp.test}),
                          config.eval_ks);
  return {config, std::move(sp.train), std::move(sp.test), std::move(trained.params), std::move(metrics),
          std::move(trained.history), {}};
}

/// Every regular file below `dir` with its bytes, keyed by relative path.
inline std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[e.path().lexically_relative(dir).string()] = read_text(e.path());
  return out;
}

}  // namespace kgforge::testing
