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

// Python bindings. JSON-shaped values cross the boundary as text and are
// decoded by the pure-Python wrapper in kgforge/__init__.py.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kgforge/artifacts.hpp"
#include "kgforge/error.hpp"
#include "kgforge/evaluation.hpp"
#include "kgforge/hpo.hpp"
#include "kgforge/inference.hpp"
#include "kgforge/ingest.hpp"
#include "kgforge/synthetic.hpp"
#include "kgforge/training.hpp"

namespace py = pybind11;
using namespace kgforge;
using nlohmann::json;

namespace {

using LabelTriple = std::tuple<std::string, std::string, std::string>;

std::vector<Triple> from_py(const std::vector<LabelTriple>& triples) {
  std::vector<Triple> out;
  out.reserve(triples.size());
  for (const auto& [h, r, t] : triples) out.push_back({h, r, t});
  return out;
}

std::vector<LabelTriple> to_py(const std::vector<Triple>& triples) {
  std::vector<LabelTriple> out;
  out.reserve(triples.size());
  for (const auto& t : triples) out.emplace_back(t.head, t.relation, t.tail);
  return out;
}

std::vector<LabelTriple> to_py(const IndexedKG& kg) {
  std::vector<LabelTriple> out;
  for (const auto& t : kg.triples()) {
    const auto l = kg.to_labels(t);
    out.emplace_back(l.head, l.relation, l.tail);
  }
  return out;
}

class Experiment {
 public:
  explicit Experiment(artifacts::ExperimentRecord rec) : rec_(std::move(rec)), model_(make_model(rec_.params.model_name)) {}

  std::string config_json() const { return artifacts::dump_json(rec_.config.to_json()); }
  std::string metrics_json() const { return artifacts::dump_json(rec_.metrics.to_json()); }
  std::vector<double> losses() const { return rec_.history.epoch_losses; }
  std::vector<LabelTriple> train_triples() const { return to_py(rec_.train); }
  std::vector<LabelTriple> test_triples() const { return to_py(rec_.test); }
  std::vector<std::string> entities() const { return rec_.train.entity_labels(); }
  std::vector<std::string> relations() const { return rec_.train.relation_labels(); }

  std::vector<double> score(const std::vector<LabelTriple>& triples) const {
    std::vector<TripleIds> ids;
    for (const auto& t : from_py(triples)) ids.push_back(rec_.train.to_ids(t));
    return predict(*model_, rec_.params, ids);
  }

  std::string evaluate_json(const std::vector<LabelTriple>& triples) const {
    std::vector<TripleIds> ids;
    for (const auto& t : from_py(triples)) ids.push_back(rec_.train.to_ids(t));
    auto known = known_triples({&rec_.train, &rec_.test});
    known.insert(ids.begin(), ids.end());
    return artifacts::dump_json(evaluate(*model_, rec_.params, ids, known, rec_.config.eval_ks).to_json());
  }

  void save(const std::filesystem::path& dir, bool overwrite) const {
    artifacts::export_experiment(dir, rec_, overwrite);
  }

 private:
  artifacts::ExperimentRecord rec_;
  std::unique_ptr<Model> model_;
};

Experiment run_experiment(const std::vector<LabelTriple>& triples, const std::string& config_text) {
  const auto config = ExperimentConfig::from_json(json::parse(config_text));
  const auto kg = build_index(from_py(triples));
  auto sp = split(kg, config.split_ratio, config.seed);
  auto trained = train(sp.train, config);
  auto model = make_model(config.model_name);
  auto metrics =
      evaluate(*model, trained.params, sp.test.triples(), known_triples({&sp.train, &sp.test}), config.eval_ks);
  return Experiment({config, std::move(sp.train), std::move(sp.test), std::move(trained.params),
                     std::move(metrics), std::move(trained.history), {}});
}

std::string search(const std::vector<LabelTriple>& triples, const std::string& space_text, std::uint64_t seed) {
  const auto space = SearchSpace::from_json(json::parse(space_text));
  const auto kg = build_index(from_py(triples));
  return artifacts::dump_json(trials_to_json(random_search(kg, space, seed)));
}

std::string validate_zoo(const std::filesystem::path& dir, const std::filesystem::path& root) {
  const auto report = artifacts::validate_zoo_entry(dir, root);
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"id", c.id}, {"description", c.description}, {"passed", c.passed}, {"reason", c.reason}});
  return checks.dump();
}

}  // namespace

PYBIND11_MODULE(_kgforge, m) {
  m.doc() = "kgforge native core";

  // Translators run newest first, so the base class goes in first.
  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<BundleError>(m, "BundleError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());

  m.def("models", [] {
    std::vector<std::string> out;
    for (auto k : kAllModels) out.emplace_back(to_string(k));
    return out;
  });
  m.def("default_config", [](const std::string& model) {
    return artifacts::dump_json(default_config(parse_model_kind(model)).to_json());
  });
  m.def("normalize_config", [](const std::string& text) {
    return artifacts::dump_json(ExperimentConfig::from_json(json::parse(text)).to_json());
  });

  m.def("parse_tsv", [](const std::string& s) { return to_py(ingest::parse_tsv(s)); });
  m.def("parse_ntriples", [](const std::string& s) { return to_py(ingest::parse_ntriples(s)); });
  m.def("parse_cx", [](const std::string& s) { return to_py(ingest::parse_cx(s)); });
  m.def("read_triples", [](const std::filesystem::path& p, const std::string& format) {
    return to_py(ingest::read_triples(p, ingest::parse_source_format(format)));
  });
  m.def("write_triples", [](const std::filesystem::path& p, const std::vector<LabelTriple>& triples) {
    write_triples(p, from_py(triples));
  });
  m.def("synthetic_kg", [](std::size_t per_group, std::size_t n, std::uint64_t seed) {
    return to_py(synthetic_kg({per_group, n, seed}));
  }, py::arg("entities_per_group") = 10, py::arg("num_triples") = 400, py::arg("seed") = 0);

  py::class_<Experiment>(m, "Experiment")
      .def("config_json", &Experiment::config_json)
      .def("metrics_json", &Experiment::metrics_json)
      .def("losses", &Experiment::losses)
      .def("train_triples", &Experiment::train_triples)
      .def("test_triples", &Experiment::test_triples)
      .def("entities", &Experiment::entities)
      .def("relations", &Experiment::relations)
      .def("score", &Experiment::score)
      .def("evaluate_json", &Experiment::evaluate_json)
      .def("save", &Experiment::save, py::arg("path"), py::arg("overwrite") = false);

  m.def("run_experiment", &run_experiment, py::call_guard<py::gil_scoped_release>());
  m.def("load_experiment", [](const std::filesystem::path& dir) { return Experiment(artifacts::load_experiment(dir)); });
  m.def("random_search", &search, py::call_guard<py::gil_scoped_release>());
  m.def("validate_zoo_entry", &validate_zoo, py::arg("path"), py::arg("root") = std::filesystem::path());
}
