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

#include "kgforge/artifacts.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "kgforge/error.hpp"
#include "kgforge/inference.hpp"
#include "kgforge/ingest.hpp"
#include "kgforge/log.hpp"

namespace kgforge::artifacts {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum class RowKey { kEntity, kRelation, kNone };

RowKey row_key(std::string_view tensor) {
  if (tensor.starts_with("entity_")) return RowKey::kEntity;
  if (tensor.starts_with("mlp_")) return RowKey::kNone;
  return RowKey::kRelation;
}

// -- little-endian byte buffer ----------------------------------------------

class Writer {
 public:
  void bytes(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  std::vector<std::uint8_t>& buffer() { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return need(1)[0]; }
  std::uint32_t u32() {
    auto p = need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    auto p = need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const auto n = u32();
    auto p = need(n);
    return {reinterpret_cast<const char*>(p.data()), n};
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::span<const std::uint8_t> need(std::size_t n) {
    if (data_.size() - pos_ < n) throw BundleError("trained_model.bin is truncated");
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  const auto s = ingest::read_file(path);
  return {s.begin(), s.end()};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw BundleError("cannot write " + path.string());
  out << text;
  if (!out) throw BundleError("cannot write " + path.string());
}

json read_json(const fs::path& dir, std::string_view name) {
  const auto path = dir / name;
  if (!fs::is_regular_file(path)) throw BundleError("missing " + std::string(name));
  try {
    return json::parse(ingest::read_file(path));
  } catch (const json::parse_error& e) {
    throw BundleError("malformed " + std::string(name) + ": " + e.what());
  }
}

json rows_by_label(const Tensor& t, const std::vector<std::string>& labels) {
  json out = json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto row = t.row(i);
    out[labels[i]] = std::vector<double>(row.begin(), row.end());
  }
  return out;
}

json dictionary_json(const std::vector<std::string>& labels) {
  json out = json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]] = i;
  return out;
}

std::vector<std::string> dictionary_from_json(const json& j, std::string_view file) {
  std::vector<std::string> labels(j.size());
  std::vector<char> seen(j.size(), 0);
  for (const auto& item : j.items()) {
    const auto id = item.value().get<std::size_t>();
    if (id >= labels.size() || seen[id])
      throw BundleError(std::string(file) + ": IDs are not dense 0..n-1");
    seen[id] = 1;
    labels[id] = item.key();
  }
  return labels;
}

std::string triples_tsv(const IndexedKG& kg) {
  std::string text;
  for (const auto& t : kg.triples()) {
    const auto l = kg.to_labels(t);
    text += l.head + '\t' + l.relation + '\t' + l.tail + '\n';
  }
  return text;
}

std::vector<TripleIds> triples_from_tsv(const fs::path& path, const IndexedKG& dict) {
  std::vector<TripleIds> out;
  for (const auto& t : ingest::read_tsv(path)) out.push_back(dict.to_ids(t));
  return out;
}

}  // namespace

std::vector<std::string> model_parameter_files(ModelKind kind) {
  std::vector<std::string> out;
  for (const auto& name : tensor_names(kind))
    if (name != "entity_embeddings" && name != "relation_embeddings") out.push_back(name + ".json");
  return out;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::vector<std::uint8_t> serialize_params(const ModelParams& params) {
  Writer w;
  w.bytes(kModelMagic);
  w.u8(kModelFormatVersion);
  w.str(params.model_name);
  w.u64(params.dims.num_entities);
  w.u64(params.dims.num_relations);
  w.u64(params.dims.embedding_dim);
  w.u64(params.dims.relation_dim);
  w.u64(params.dims.hidden_dim);
  w.u32(static_cast<std::uint32_t>(params.dims.scoring_norm));
  w.u32(static_cast<std::uint32_t>(params.tensors.size()));
  for (const auto& t : params.tensors) {
    w.str(t.name);
    w.u64(t.rows);
    w.u64(t.cols);
    for (double x : t.data) w.f64(x);
  }
  const auto sum = fnv1a64(w.buffer());
  w.u64(sum);
  return std::move(w.buffer());
}

ModelParams deserialize_params(std::span<const std::uint8_t> bytes) {
  const auto header = kModelMagic.size() + 1;
  if (bytes.size() < header + 8) throw BundleError("trained_model.bin is truncated");
  if (!std::equal(kModelMagic.begin(), kModelMagic.end(), bytes.begin()))
    throw BundleError("trained_model.bin has a bad magic header");

  const auto body = bytes.first(bytes.size() - 8);
  Reader trailer(bytes.last(8));
  const auto stored = trailer.u64();
  const auto actual = fnv1a64(body);
  if (stored != actual) throw BundleError("trained_model.bin checksum mismatch");

  const auto version = bytes[kModelMagic.size()];
  if (version != kModelFormatVersion)
    throw BundleError("trained_model.bin format version " + std::to_string(version) +
                      " is not supported (expected " + std::to_string(kModelFormatVersion) + ")");

  Reader r(body.subspan(header));
  ModelParams p;
  p.model_name = r.str();
  p.dims.num_entities = r.u64();
  p.dims.num_relations = r.u64();
  p.dims.embedding_dim = r.u64();
  p.dims.relation_dim = r.u64();
  p.dims.hidden_dim = r.u64();
  p.dims.scoring_norm = static_cast<int>(r.u32());
  const auto count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    Tensor t;
    t.name = r.str();
    t.rows = r.u64();
    t.cols = r.u64();
    if (t.cols != 0 && t.rows > (body.size() / 8) / t.cols)
      throw BundleError("trained_model.bin is truncated");
    t.data.resize(t.rows * t.cols);
    for (double& x : t.data) x = r.f64();
    p.tensors.push_back(std::move(t));
  }
  if (!r.done()) throw BundleError("trained_model.bin has trailing bytes");
  return p;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void export_experiment(const fs::path& dir, const ExperimentRecord& rec, bool overwrite) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) throw BundleError(dir.string() + " exists and is not a directory");
    if (!fs::is_empty(dir) && !overwrite)
      throw BundleError(dir.string() + " is not empty (use overwrite to replace it)");
  }
  const auto& kg = rec.train;
  const auto& params = rec.params;
  if (params.dims.num_entities != kg.num_entities() || params.dims.num_relations != kg.num_relations())
    throw BundleError("parameter shapes do not match the dictionaries");

  auto staging = dir;
  staging += ".staging";
  fs::remove_all(staging);
  fs::create_directories(staging);

  write_text(staging / kConfigFile, dump_json(rec.config.to_json()));
  write_text(staging / kSummaryFile, dump_json(rec.metrics.to_json()));
  write_text(staging / kEntityMapFile, dump_json(dictionary_json(kg.entity_labels())));
  write_text(staging / kRelationMapFile, dump_json(dictionary_json(kg.relation_labels())));

  const auto& labels_e = kg.entity_labels();
  const auto& labels_r = kg.relation_labels();
  for (const auto& t : params.tensors) {
    json j;
    switch (row_key(t.name)) {
      case RowKey::kEntity: j = rows_by_label(t, labels_e); break;
      case RowKey::kRelation: j = rows_by_label(t, labels_r); break;
      case RowKey::kNone:
        j = json::array();
        for (std::size_t i = 0; i < t.rows; ++i) {
          const auto row = t.row(i);
          j.push_back(std::vector<double>(row.begin(), row.end()));
        }
        break;
    }
    write_text(staging / (t.name + ".json"), dump_json(j));
  }
  if (params.find("relation_embeddings") == nullptr) {
    // Models without relation vectors still ship the file, one empty row per relation.
    json j = json::object();
    for (const auto& l : labels_r) j[l] = json::array();
    write_text(staging / kRelationEmbeddingsFile, dump_json(j));
  }

  const auto blob = serialize_params(params);
  write_text(staging / kModelFile, std::string(blob.begin(), blob.end()));
  write_text(staging / kHistoryFile,
             dump_json({{"epoch_losses", rec.history.epoch_losses}, {"epochs_run", rec.history.epochs_run}}));
  write_text(staging / kTrainTriplesFile, triples_tsv(rec.train));
  write_text(staging / kTestTriplesFile, triples_tsv(rec.test));
  if (rec.hpo_trials) write_text(staging / kTrialsFile, dump_json(*rec.hpo_trials));

  if (fs::exists(dir)) fs::remove_all(dir);
  if (dir.has_parent_path()) fs::create_directories(dir.parent_path());
  fs::rename(staging, dir);
  logger().info("exported bundle to {}", dir.string());
}

ExperimentRecord load_experiment(const fs::path& dir) {
  for (auto name : kRequiredFiles)
    if (!fs::is_regular_file(dir / name)) throw BundleError("missing " + std::string(name));

  ExperimentRecord rec;
  try {
    rec.config = ExperimentConfig::from_json(read_json(dir, kConfigFile));
  } catch (const ConfigError& e) {
    throw BundleError(std::string("invalid configuration.json: ") + e.what());
  }
  rec.params = deserialize_params(read_bytes(dir / kModelFile));
  if (rec.params.model_name != to_string(rec.config.model_name))
    throw BundleError("trained_model.bin holds " + rec.params.model_name + " but configuration.json names " +
                      std::string(to_string(rec.config.model_name)));
  try {
    rec.metrics = RankMetrics::from_json(read_json(dir, kSummaryFile));
  } catch (const BundleError&) {
    throw;
  } catch (const Error& e) {
    throw BundleError(e.what());
  }

  const auto dict = IndexedKG::from_dictionaries(
      dictionary_from_json(read_json(dir, kEntityMapFile), kEntityMapFile),
      dictionary_from_json(read_json(dir, kRelationMapFile), kRelationMapFile), {});
  if (dict.num_entities() != rec.params.dims.num_entities ||
      dict.num_relations() != rec.params.dims.num_relations)
    throw BundleError("dictionary sizes do not match trained_model.bin");

  rec.train = fs::is_regular_file(dir / kTrainTriplesFile)
                  ? dict.with_triples(triples_from_tsv(dir / kTrainTriplesFile, dict))
                  : dict;
  rec.test = fs::is_regular_file(dir / kTestTriplesFile)
                 ? dict.with_triples(triples_from_tsv(dir / kTestTriplesFile, dict))
                 : dict;
  if (fs::is_regular_file(dir / kHistoryFile)) {
    const auto h = read_json(dir, kHistoryFile);
    rec.history.epoch_losses = h.at("epoch_losses").get<std::vector<double>>();
    rec.history.epochs_run = h.at("epochs_run").get<std::size_t>();
  }
  if (fs::is_regular_file(dir / kTrialsFile)) rec.hpo_trials = read_json(dir, kTrialsFile);
  return rec;
}

// ---------------------------------------------------------------------------

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const RequirementCheck& ValidationReport::check(std::string_view id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw Error("no requirement '" + std::string(id) + "' in report");
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.description;
    if (!c.reason.empty()) out << ": " << c.reason;
    out << '\n';
  }
  return out.str();
}

namespace {

std::optional<json> try_config(const fs::path& dir) {
  try {
    return read_json(dir, kConfigFile);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string metadata_field(const std::optional<json>& config, const char* key) {
  if (!config || !config->is_object()) return {};
  auto md = config->find("metadata");
  if (md == config->end() || !md->is_object()) return {};
  auto v = md->find(key);
  return (v != md->end() && v->is_string()) ? v->get<std::string>() : std::string();
}

fs::path find_zoo_root(const fs::path& dir) {
  for (auto p = dir.parent_path(); !p.empty(); p = p.parent_path()) {
    if (fs::exists(p / kZooRootMarker)) return p;
    if (p == p.root_path()) break;
  }
  return {};
}

}  // namespace

ValidationReport validate_zoo_entry(const fs::path& entry, const fs::path& zoo_root) {
  ValidationReport report;
  std::error_code ec;
  const auto dir = fs::weakly_canonical(entry, ec);
  const auto config = try_config(dir);

  {
    RequirementCheck c{"i", "publication reference", false, ""};
    c.passed = !metadata_field(config, "reference").empty();
    if (!c.passed) c.reason = "configuration.json has no non-empty metadata.reference";
    report.checks.push_back(std::move(c));
  }
  {
    RequirementCheck c{"ii", "complete experimental artifacts", false, ""};
    std::vector<std::string> expected(std::begin(kRequiredFiles), std::end(kRequiredFiles));
    if (config) {
      try {
        auto extra = model_parameter_files(parse_model_kind(config->at("model_name").get<std::string>()));
        expected.insert(expected.end(), extra.begin(), extra.end());
      } catch (const std::exception&) {
        c.reason = "configuration.json does not name a known model; ";
      }
    }
    std::string missing;
    for (const auto& name : expected) {
      if (!fs::is_regular_file(dir / name)) missing += (missing.empty() ? "" : ", ") + name;
    }
    c.passed = missing.empty() && c.reason.empty();
    if (!missing.empty()) c.reason += "missing " + missing;
    report.checks.push_back(std::move(c));
  }
  {
    RequirementCheck c{"iii", "dataset reference", false, ""};
    static const std::regex url(R"(^https?://[^\s/]+\S*$)");
    const auto value = metadata_field(config, "dataset_url");
    c.passed = std::regex_match(value, url);
    if (!c.passed)
      c.reason = value.empty() ? "configuration.json has no metadata.dataset_url"
                               : "metadata.dataset_url '" + value + "' is not an http(s) URL";
    report.checks.push_back(std::move(c));
  }
  {
    RequirementCheck c{"iv", "README description", false, ""};
    const auto readme = dir / "README.md";
    c.passed = fs::is_regular_file(readme) && fs::file_size(readme) > 0;
    if (!c.passed) c.reason = "README.md is missing or empty";
    report.checks.push_back(std::move(c));
  }
  {
    RequirementCheck c{"v", "model instantiation", false, ""};
    try {
      const auto params = deserialize_params(read_bytes(dir / kModelFile));
      const auto model = make_model(params.model_name);
      const double s = score(*model, params, TripleIds{0, 0, 0});
      c.passed = std::isfinite(s);
      if (!c.passed) c.reason = "probe score is not finite";
    } catch (const std::exception& e) {
      c.reason = e.what();
    }
    report.checks.push_back(std::move(c));
  }
  {
    RequirementCheck c{"layout", "<domain>/<dataset>/<experiment> layout", false, ""};
    const auto root = zoo_root.empty() ? find_zoo_root(dir) : fs::weakly_canonical(zoo_root, ec);
    if (root.empty()) {
      c.reason = "no zoo root found (expected an ancestor containing " + std::string(kZooRootMarker) + ")";
    } else {
      const auto rel = dir.lexically_relative(root);
      std::size_t depth = 0;
      bool escapes = rel.empty();
      for (const auto& part : rel) {
        if (part == "..") escapes = true;
        if (!part.empty() && part != ".") ++depth;
      }
      c.passed = !escapes && depth == 3;
      if (!c.passed)
        c.reason = "entry is " + std::to_string(depth) + " levels below the zoo root, expected 3";
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace kgforge::artifacts
