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

#include "kgforge/cli.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgforge/artifacts.hpp"
#include "kgforge/error.hpp"
#include "kgforge/evaluation.hpp"
#include "kgforge/hpo.hpp"
#include "kgforge/inference.hpp"
#include "kgforge/ingest.hpp"
#include "kgforge/log.hpp"
#include "kgforge/training.hpp"

namespace kgforge::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

/// Bad user input discovered after argument parsing (exit code 1).
class UsageError : public Error {
 public:
  using Error::Error;
};

json read_json_file(const std::string& path) {
  try {
    return json::parse(ingest::read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + " is not valid JSON: " + e.what());
  }
}

IndexedKG load_graph(const std::string& path, const std::string& format) {
  const auto triples = ingest::read_triples(path, ingest::parse_source_format(format));
  auto kg = build_index(triples);
  logger().info("loaded {} triples ({} entities, {} relations) from {}", kg.triples().size(),
                kg.num_entities(), kg.num_relations(), path);
  return kg;
}

std::vector<std::string> read_label_list(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(ingest::read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    out.push_back(line.substr(start));
  }
  return out;
}

artifacts::ExperimentRecord train_and_evaluate(const ExperimentConfig& config, const TrainTestSplit& sp) {
  auto model = make_model(config.model_name);
  auto trained = train(sp.train, config);
  const auto known = known_triples({&sp.train, &sp.test});
  auto metrics = evaluate(*model, trained.params, sp.test.triples(), known, config.eval_ks);
  logger().info("test mean rank {:.3f} (raw) / {:.3f} (filtered)", metrics.mean_rank_raw,
                metrics.mean_rank_filtered);
  return {config, sp.train, sp.test, std::move(trained.params), std::move(metrics), std::move(trained.history), {}};
}

struct Options {
  std::string config, data, format = "tsv", out, space, bundle, test, entities, relations, exclude;
  std::string device = "cpu", root;
  std::uint64_t seed = 0;
  double split_ratio = 0.8;
  bool overwrite = false;
  bool no_reflexive = false;
};

int cmd_train(const Options& o) {
  if (o.device != "cpu") throw UsageError("--device " + o.device + " is not supported (only cpu)");
  const auto config = ExperimentConfig::from_json(read_json_file(o.config));
  const auto kg = load_graph(o.data, o.format);
  const auto sp = split(kg, config.split_ratio, config.seed);
  artifacts::export_experiment(o.out, train_and_evaluate(config, sp), o.overwrite);
  return kExitOk;
}

int cmd_hpo(const Options& o) {
  if (o.device != "cpu") throw UsageError("--device " + o.device + " is not supported (only cpu)");
  const auto space = SearchSpace::from_json(read_json_file(o.space));
  const auto kg = load_graph(o.data, o.format);
  const auto sp = split(kg, o.split_ratio, o.seed);
  const auto search = random_search(sp.train, space, o.seed);
  auto config = search.best().config;
  config.split_ratio = o.split_ratio;
  config.mode = Mode::kHpo;
  logger().info("best trial {} ({})", search.best().trial_index, search.best().selection_value);
  auto record = train_and_evaluate(config, sp);
  record.hpo_trials = trials_to_json(search);
  artifacts::export_experiment(o.out, record, o.overwrite);
  return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const auto rec = artifacts::load_experiment(o.bundle);
  std::vector<TripleIds> test;
  for (const auto& t : ingest::read_triples(o.test, ingest::parse_source_format(o.format)))
    test.push_back(rec.train.to_ids(t));
  auto known = known_triples({&rec.train, &rec.test});
  known.insert(test.begin(), test.end());
  auto model = make_model(rec.params.model_name);
  const auto metrics = evaluate(*model, rec.params, test, known, rec.config.eval_ks);
  if (o.out.empty())
    out << artifacts::dump_json(metrics.to_json());
  else
    write_file_atomic(o.out, artifacts::dump_json(metrics.to_json()));
  logger().info("mean rank {:.3f} (raw) / {:.3f} (filtered)", metrics.mean_rank_raw, metrics.mean_rank_filtered);
  return kExitOk;
}

int cmd_infer(const Options& o) {
  const auto rec = artifacts::load_experiment(o.bundle);
  const auto& dict = rec.train;
  std::vector<EntityId> entities;
  for (const auto& l : read_label_list(o.entities)) {
    auto id = dict.entity_id(l);
    if (!id) throw UsageError("unknown entity '" + l + "' in " + o.entities);
    entities.push_back(*id);
  }
  std::vector<RelationId> relations;
  for (const auto& l : read_label_list(o.relations)) {
    auto id = dict.relation_id(l);
    if (!id) throw UsageError("unknown relation '" + l + "' in " + o.relations);
    relations.push_back(*id);
  }
  if (entities.empty() || relations.empty()) throw UsageError("entity and relation lists must not be empty");

  TripleSet exclude;
  if (!o.exclude.empty()) {
    std::size_t skipped = 0;
    for (const auto& t : ingest::read_tsv(o.exclude)) {
      auto h = dict.entity_id(t.head);
      auto r = dict.relation_id(t.relation);
      auto tl = dict.entity_id(t.tail);
      if (h && r && tl)
        exclude.insert({*h, *r, *tl});
      else
        ++skipped;
    }
    if (skipped > 0) logger().info("{} exclusion triples use unknown labels and cannot match", skipped);
  }

  const auto candidates = enumerate_candidates(entities, relations, exclude, o.no_reflexive);
  auto model = make_model(rec.params.model_name);
  const auto ranked = rank_candidates(*model, rec.params, candidates);
  write_predictions(o.out, to_labels(dict, ranked));
  logger().info("wrote {} ranked predictions to {}", ranked.size(), o.out);
  return kExitOk;
}

int cmd_wizard(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto config = wizard(in, out);
  if (!config) {
    err << "error: input ended before the configuration was complete; nothing written\n";
    return kExitUsage;
  }
  const auto text = artifacts::dump_json(config->to_json());
  out << text;
  write_file_atomic(o.out, text);
  out << "configuration written to " << o.out << "\n";
  return kExitOk;
}

int cmd_zoo_validate(const Options& o, std::ostream& out) {
  const auto report = artifacts::validate_zoo_entry(o.bundle, o.root);
  out << report.to_string();
  return report.passed() ? kExitOk : kExitRuntime;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"kgforge: train, evaluate and share knowledge graph embeddings", "kgforge"};
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train", "Train a model from a configuration file and export a bundle");
  train->add_option("--config", o.config, "Experiment configuration (JSON)")->required()->check(CLI::ExistingFile);
  train->add_option("--data", o.data, "Knowledge graph file")->required()->check(CLI::ExistingFile);
  train->add_option("--format", o.format, "Data format")->check(CLI::IsMember({"tsv", "ntriples", "cx"}));
  train->add_option("--out", o.out, "Bundle directory to create")->required();
  train->add_option("--device", o.device, "Training device (cpu)");
  train->add_flag("--overwrite", o.overwrite, "Replace an existing bundle");

  auto* hpo = app.add_subcommand("hpo", "Random hyper-parameter search, then train the best configuration");
  hpo->add_option("--space", o.space, "Search space (JSON)")->required()->check(CLI::ExistingFile);
  hpo->add_option("--data", o.data, "Knowledge graph file")->required()->check(CLI::ExistingFile);
  hpo->add_option("--format", o.format, "Data format")->check(CLI::IsMember({"tsv", "ntriples", "cx"}));
  hpo->add_option("--out", o.out, "Bundle directory to create")->required();
  hpo->add_option("--seed", o.seed, "Seed for the split and the search");
  hpo->add_option("--split-ratio", o.split_ratio, "Train/test split ratio")->check(CLI::Range(0.0, 1.0));
  hpo->add_option("--device", o.device, "Training device (cpu)");
  hpo->add_flag("--overwrite", o.overwrite, "Replace an existing bundle");

  auto* evaluate = app.add_subcommand("evaluate", "Rank test triples with a trained bundle");
  evaluate->add_option("--bundle", o.bundle, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  evaluate->add_option("--test", o.test, "Test triples")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--format", o.format, "Test file format")->check(CLI::IsMember({"tsv", "ntriples", "cx"}));
  evaluate->add_option("--out", o.out, "Write metrics JSON here instead of standard output");

  auto* infer = app.add_subcommand("infer", "Score and rank all candidate triples over entity/relation sets");
  infer->add_option("--bundle", o.bundle, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  infer->add_option("--entities", o.entities, "Entity labels, one per line")->required()->check(CLI::ExistingFile);
  infer->add_option("--relations", o.relations, "Relation labels, one per line")->required()->check(CLI::ExistingFile);
  infer->add_option("--exclude", o.exclude, "TSV triples to leave out")->check(CLI::ExistingFile);
  infer->add_flag("--no-reflexive", o.no_reflexive, "Drop (e, r, e) candidates");
  infer->add_option("--out", o.out, "Prediction TSV")->required();

  auto* wiz = app.add_subcommand("wizard", "Build a configuration interactively");
  o.out = "";
  std::string wizard_out = "configuration.json";
  wiz->add_option("--out", wizard_out, "Where to write the configuration");

  auto* zoo = app.add_subcommand("zoo-validate", "Check a model zoo entry");
  zoo->add_option("dir", o.bundle, "Zoo entry directory")->required()->check(CLI::ExistingDirectory);
  zoo->add_option("--root", o.root, "Zoo root (default: nearest ancestor with .kgforge-zoo)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kExitUsage;
  }

  try {
    if (train->parsed()) return cmd_train(o);
    if (hpo->parsed()) return cmd_hpo(o);
    if (evaluate->parsed()) return cmd_evaluate(o, out);
    if (infer->parsed()) return cmd_infer(o);
    if (wiz->parsed()) {
      o.out = wizard_out;
      return cmd_wizard(o, in, out, err);
    }
    if (zoo->parsed()) return cmd_zoo_validate(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace kgforge::cli
