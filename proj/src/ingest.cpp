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

#include "kgforge/ingest.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace kgforge::ingest {

namespace {

constexpr std::array<std::pair<SourceFormat, std::string_view>, 3> kFormatNames{{
    {SourceFormat::kTsv, "tsv"},
    {SourceFormat::kNTriples, "ntriples"},
    {SourceFormat::kCx, "cx"},
}};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Calls fn(line_number, line) for every line, without the newline.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line_no, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

// N-Triples term scanner over one line.
class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void advance() { ++pos_; }

  std::string subject() {
    skip_ws();
    if (at_end()) fail("missing statement terminator");
    if (peek() == '<') return iri();
    if (starts_with("_:")) return blank();
    fail(std::string("unexpected character '") + peek() + "' in subject");
  }

  std::string predicate() {
    skip_ws();
    if (at_end()) fail("missing statement terminator");
    if (peek() == '<') return iri();
    fail(std::string("unexpected character '") + peek() + "' in predicate");
  }

  std::string object() {
    skip_ws();
    if (at_end()) fail("missing statement terminator");
    if (peek() == '<') return iri();
    if (peek() == '"') return literal();
    if (starts_with("_:")) return blank();
    fail(std::string("unexpected character '") + peek() + "' in object");
  }

  void terminator() {
    skip_ws();
    if (at_end() || peek() != '.') fail("missing statement terminator");
    advance();
    skip_ws();
    if (!at_end() && peek() != '#') fail("unexpected content after statement terminator");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

 private:
  bool starts_with(std::string_view p) const { return s_.substr(pos_).starts_with(p); }

  // Returns the IRI body; pos_ ends past '>'.
  std::string iri() {
    const auto start = ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '>') {
      const char c = s_[pos_];
      if (c == '<' || c == ' ' || c == '\t' || c == '"') fail("unbalanced angle brackets in IRI");
      ++pos_;
    }
    if (pos_ >= s_.size()) fail("unterminated IRI");
    std::string out(s_.substr(start, pos_ - start));
    ++pos_;
    if (out.empty()) fail("empty IRI");
    return out;
  }

  std::string blank() {
    const auto start = pos_;
    pos_ += 2;
    while (pos_ < s_.size() && !is_space(s_[pos_])) ++pos_;
    if (pos_ - start == 2) fail("empty blank node label");
    return std::string(s_.substr(start, pos_ - start));
  }

  // The label is the literal exactly as written, suffixes included.
  std::string literal() {
    const auto start = pos_++;
    bool closed = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        ++pos_;
      } else if (c == '"') {
        closed = true;
        break;
      }
    }
    if (!closed) fail("unterminated literal");
    if (pos_ < s_.size() && s_[pos_] == '@') {
      ++pos_;
      const auto tag = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-'))
        ++pos_;
      if (pos_ == tag) fail("empty language tag");
    } else if (starts_with("^^")) {
      pos_ += 2;
      if (at_end() || peek() != '<') fail("datatype must be an IRI");
      iri();
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_no_;
};

}  // namespace

SourceFormat parse_source_format(std::string_view s) {
  for (const auto& [f, name] : kFormatNames)
    if (name == s) return f;
  throw Error("unknown format '" + std::string(s) + "' (expected tsv, ntriples or cx)");
}

std::string_view to_string(SourceFormat f) {
  for (const auto& [value, name] : kFormatNames)
    if (value == f) return name;
  return "?";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Triple> parse_tsv(std::string_view text) {
  std::vector<Triple> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.starts_with('#') || trim(line).empty()) return;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    for (auto& f : fields) {
      f = trim(f);
      if (f.empty()) throw ParseError(line_no, "empty field");
    }
    out.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2])});
  });
  return out;
}

std::vector<Triple> read_tsv(const std::filesystem::path& path) { return parse_tsv(read_file(path)); }

std::vector<Triple> parse_ntriples(std::string_view text) {
  std::vector<Triple> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    LineScanner scan(line, line_no);
    scan.skip_ws();
    if (scan.at_end() || scan.peek() == '#') return;
    Triple t;
    t.head = scan.subject();
    t.relation = scan.predicate();
    t.tail = scan.object();
    scan.terminator();
    out.push_back(std::move(t));
  });
  return out;
}

std::vector<Triple> read_ntriples(const std::filesystem::path& path) {
  return parse_ntriples(read_file(path));
}

std::vector<Triple> parse_cx(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("malformed CX JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError(0, "malformed CX: top level must be an array of aspects");

  auto element_id = [](const json& el, const char* what) -> std::int64_t {
    for (const char* key : {"@id", "id"}) {
      auto it = el.find(key);
      if (it != el.end() && it->is_number_integer()) return it->get<std::int64_t>();
    }
    throw ParseError(0, std::string("malformed CX: ") + what + " without integer @id");
  };

  std::unordered_map<std::int64_t, std::string> names;
  std::vector<const json*> edges;
  for (const auto& fragment : doc) {
    if (!fragment.is_object()) throw ParseError(0, "malformed CX: aspect fragment must be an object");
    if (auto it = fragment.find("nodes"); it != fragment.end()) {
      if (!it->is_array()) throw ParseError(0, "malformed CX: nodes must be an array");
      for (const auto& node : *it) {
        if (!node.is_object()) throw ParseError(0, "malformed CX: node must be an object");
        const auto id = element_id(node, "node");
        auto n = node.find("n");
        std::string name = (n != node.end() && n->is_string()) ? n->get<std::string>() : "";
        if (name.empty()) name = "node:" + std::to_string(id);
        names[id] = std::move(name);
      }
    }
    if (auto it = fragment.find("edges"); it != fragment.end()) {
      if (!it->is_array()) throw ParseError(0, "malformed CX: edges must be an array");
      for (const auto& edge : *it) {
        if (!edge.is_object()) throw ParseError(0, "malformed CX: edge must be an object");
        edges.push_back(&edge);
      }
    }
  }

  std::vector<Triple> out;
  out.reserve(edges.size());
  for (const json* edge : edges) {
    auto endpoint = [&](const char* key) -> const std::string& {
      auto it = edge->find(key);
      if (it == edge->end() || !it->is_number_integer())
        throw ParseError(0, std::string("malformed CX: edge without integer '") + key + "'");
      const auto id = it->get<std::int64_t>();
      auto found = names.find(id);
      if (found == names.end()) throw ParseError(0, "edge references unknown node " + std::to_string(id));
      return found->second;
    };
    Triple t;
    t.head = endpoint("s");
    t.tail = endpoint("t");
    auto i = edge->find("i");
    t.relation = (i != edge->end() && i->is_string() && !i->get<std::string>().empty())
                     ? i->get<std::string>()
                     : std::string(kDefaultCxRelation);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Triple> read_cx(const std::filesystem::path& path) { return parse_cx(read_file(path)); }

std::vector<Triple> read_triples(const std::filesystem::path& path, SourceFormat format) {
  switch (format) {
    case SourceFormat::kTsv: return read_tsv(path);
    case SourceFormat::kNTriples: return read_ntriples(path);
    case SourceFormat::kCx: return read_cx(path);
  }
  throw Error("unknown format");
}

}  // namespace kgforge::ingest
