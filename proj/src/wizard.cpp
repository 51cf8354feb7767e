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

#include <charconv>
#include <functional>
#include <istream>
#include <ostream>

#include "kgforge/cli.hpp"
#include "kgforge/error.hpp"
#include "kgforge/ingest.hpp"

namespace kgforge::cli {

namespace {

struct EndOfInput {};

class Prompter {
 public:
  Prompter(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  /// Ask until `accept` returns an empty error string. Blank answers take
  /// the default when one is given.
  std::string ask(const std::string& question, const std::string& fallback, const std::string& example,
                  const std::function<std::string(const std::string&)>& accept) {
    while (true) {
      out_ << question;
      if (!fallback.empty()) out_ << " [" << fallback << "]";
      out_ << ": " << std::flush;
      std::string line;
      if (!std::getline(in_, line)) throw EndOfInput{};
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      while (!line.empty() && line.front() == ' ') line.erase(line.begin());
      if (line.empty()) line = fallback;
      const auto problem = accept(line);
      if (problem.empty()) return line;
      out_ << "Invalid value '" << line << "': " << problem << " (e.g. " << example << ")\n";
    }
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

template <class T>
bool parse_number(const std::string& s, T& value) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::function<std::string(const std::string&)> positive_int(const char* what) {
  return [what](const std::string& s) -> std::string {
    std::int64_t v = 0;
    if (!parse_number(s, v) || v < 1) return std::string(what) + " must be a positive integer";
    return {};
  };
}

std::function<std::string(const std::string&)> one_of(std::vector<std::string> options) {
  return [options](const std::string& s) -> std::string {
    for (const auto& o : options)
      if (o == s) return {};
    std::string list;
    for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
    return "expected one of " + list;
  };
}

}  // namespace

std::optional<ExperimentConfig> wizard(std::istream& in, std::ostream& out) {
  Prompter p(in, out);
  try {
    out << "kgforge experiment configuration\n";
    ExperimentConfig c;
    c.mode = parse_mode(p.ask("Mode (training or hpo)", "training", "training", one_of({"training", "hpo"})));

    c.metadata["data_path"] = p.ask("Path to the knowledge graph file", "", "data/kg.tsv",
                                     [](const std::string& s) -> std::string {
                                       return s.empty() ? "a path is required" : "";
                                     });
    c.metadata["data_format"] =
        p.ask("Data format (tsv, ntriples, cx)", "tsv", "tsv", one_of({"tsv", "ntriples", "cx"}));

    std::vector<std::string> models;
    for (auto m : kAllModels) models.emplace_back(to_string(m));
    c.model_name = parse_model_kind(p.ask("Model (TransE, TransH, TransR, TransD, UM, SE, RESCAL, DistMult, ERMLP)",
                                          "TransE", "TransE", one_of(models)));
    c.loss = default_loss(c.model_name);

    auto read_int = [&](const char* question, const char* what, const char* fallback, const char* example) {
      std::int64_t v = 0;
      parse_number(p.ask(question, fallback, example, positive_int(what)), v);
      return v;
    };

    c.embedding_dim = read_int("Embedding dimension", "the embedding dimension", "50", "50");
    if (c.model_name == ModelKind::kTransR || c.model_name == ModelKind::kTransD) {
      c.model_specific["relation_dim"] =
          read_int("Relation embedding dimension", "the relation dimension", std::to_string(c.embedding_dim).c_str(), "50");
    }
    if (c.model_name == ModelKind::kERMLP) {
      c.model_specific["hidden_dim"] =
          read_int("Hidden layer size", "the hidden layer size", std::to_string(c.embedding_dim).c_str(), "50");
    }
    if (c.model_name == ModelKind::kTransE || c.model_name == ModelKind::kSE) {
      c.model_specific["scoring_norm"] =
          std::stoll(p.ask("Scoring norm (1 or 2)", "1", "1", one_of({"1", "2"})));
    }

    auto positive_real = [](const char* what) {
      return [what](const std::string& s) -> std::string {
        double v = 0;
        if (!parse_number(s, v) || !(v > 0.0)) return std::string(what) + " must be a positive number";
        return {};
      };
    };
    parse_number(p.ask("Learning rate", "0.01", "0.01", positive_real("the learning rate")), c.learning_rate);

    c.loss = parse_loss_kind(p.ask("Loss (margin_ranking or binary_cross_entropy)", std::string(to_string(c.loss)),
                                   "margin_ranking", one_of({"margin_ranking", "binary_cross_entropy"})));
    if (c.loss == LossKind::kMarginRanking) {
      parse_number(p.ask("Margin", "1", "1.0",
                         [](const std::string& s) -> std::string {
                           double v = 0;
                           if (!parse_number(s, v) || !(v >= 0.0)) return "the margin must be a non-negative number";
                           return {};
                         }),
                   c.margin);
    }
    c.num_epochs = read_int("Number of epochs", "the number of epochs", "100", "100");
    c.batch_size = read_int("Batch size", "the batch size", "32", "32");
    parse_number(p.ask("Train/test split ratio", "0.8", "0.8",
                       [](const std::string& s) -> std::string {
                         double v = 0;
                         if (!parse_number(s, v) || !(v > 0.0 && v < 1.0))
                           return "the split ratio must lie strictly between 0 and 1";
                         return {};
                       }),
                 c.split_ratio);
    parse_number(p.ask("Random seed", "0", "42",
                       [](const std::string& s) -> std::string {
                         std::uint64_t v = 0;
                         return parse_number(s, v) ? "" : "the seed must be a non-negative integer";
                       }),
                 c.seed);
    c.validate();
    return c;
  } catch (const EndOfInput&) {
    out << "\n";
    return std::nullopt;
  }
}

}  // namespace kgforge::cli
