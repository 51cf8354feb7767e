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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgforge/config.hpp"
#include "kgforge/evaluation.hpp"
#include "kgforge/kg.hpp"
#include "kgforge/models.hpp"
#include "kgforge/training.hpp"

namespace kgforge::artifacts {

// Bundle file names.
inline constexpr std::string_view kConfigFile = "configuration.json";
inline constexpr std::string_view kSummaryFile = "evaluation_summary.json";
inline constexpr std::string_view kEntityMapFile = "entity_to_id.json";
inline constexpr std::string_view kRelationMapFile = "relation_to_id.json";
inline constexpr std::string_view kEntityEmbeddingsFile = "entity_embeddings.json";
inline constexpr std::string_view kRelationEmbeddingsFile = "relation_embeddings.json";
inline constexpr std::string_view kModelFile = "trained_model.bin";
inline constexpr std::string_view kHistoryFile = "training_history.json";
inline constexpr std::string_view kTrainTriplesFile = "train_triples.tsv";
inline constexpr std::string_view kTestTriplesFile = "test_triples.tsv";
inline constexpr std::string_view kTrialsFile = "hpo_trials.json";

/// Files every bundle carries regardless of model.
inline constexpr std::string_view kRequiredFiles[] = {
    kConfigFile,           kSummaryFile,           kEntityMapFile, kRelationMapFile,
    kEntityEmbeddingsFile, kRelationEmbeddingsFile, kModelFile};

/// Extra per-model parameter files (one per tensor family beyond entity and
/// relation embeddings), e.g. "normal_vectors.json" for TransH.
std::vector<std::string> model_parameter_files(ModelKind kind);

// ---------------------------------------------------------------------------
// trained_model.bin
//
//   "KEENB" | version:u8 | payload | fnv1a64(all preceding bytes):u64
//
// payload (little endian):
//   model_name:str | num_entities:u64 | num_relations:u64 | embedding_dim:u64
//   | relation_dim:u64 | hidden_dim:u64 | scoring_norm:u32 | tensor_count:u32
//   | tensor_count x (name:str | rows:u64 | cols:u64 | rows*cols x f64)
// str = length:u32 followed by UTF-8 bytes.

inline constexpr std::string_view kModelMagic = "KEENB";
inline constexpr std::uint8_t kModelFormatVersion = 1;

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_params(const ModelParams& params);
/// Throws BundleError on bad magic, checksum mismatch, version mismatch
/// (message names both versions) or truncation.
ModelParams deserialize_params(std::span<const std::uint8_t> bytes);

// ---------------------------------------------------------------------------

struct ExperimentRecord {
  ExperimentConfig config;
  /// Dictionaries plus training triples.
  IndexedKG train;
  /// Same dictionaries, test triples.
  IndexedKG test;
  ModelParams params;
  RankMetrics metrics;
  TrainingHistory history;
  std::optional<nlohmann::json> hpo_trials;
};

/// Write a bundle to `dir`. The bundle is assembled in a sibling temporary
/// directory and renamed into place. A non-empty `dir` is an error unless
/// `overwrite` is set.
void export_experiment(const std::filesystem::path& dir, const ExperimentRecord& record,
                       bool overwrite = false);

/// Reverse of export_experiment. Missing files raise BundleError("missing
/// <name>"). wall_seconds is not stored and loads as 0.
ExperimentRecord load_experiment(const std::filesystem::path& dir);

/// Serialize JSON the way bundles do: sorted keys, 2-space indent, trailing
/// newline, shortest round-trip numbers.
std::string dump_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Model zoo entries: <zoo root>/<domain>/<dataset>/<experiment>/

/// Marker file identifying the zoo root directory.
inline constexpr std::string_view kZooRootMarker = ".kgforge-zoo";

struct RequirementCheck {
  std::string id;  // "i" .. "v", or "layout"
  std::string description;
  bool passed = false;
  std::string reason;
};

struct ValidationReport {
  std::vector<RequirementCheck> checks;

  bool passed() const;
  const RequirementCheck& check(std::string_view id) const;
  std::string to_string() const;
};

/// Mechanical zoo checks. Never modifies the directory. When `zoo_root` is
/// empty the nearest ancestor holding kZooRootMarker is used.
///   i      non-empty metadata.reference in configuration.json (proxy for a
///          publication reference)
///   ii     bundle completeness
///   iii    metadata.dataset_url is an http(s) URL (syntactic only)
///   iv     non-empty README.md
///   v      trained_model.bin instantiates and scores a probe triple
///   layout entry sits exactly three levels below the zoo root
ValidationReport validate_zoo_entry(const std::filesystem::path& dir,
                                    const std::filesystem::path& zoo_root = {});

}  // namespace kgforge::artifacts
