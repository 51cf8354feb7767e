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

#include <doctest.h>

#include "kgforge/error.hpp"
#include "kgforge/inference.hpp"
#include "kgforge/ingest.hpp"
#include "kgforge/kg.hpp"
#include "kgforge/rng.hpp"
#include "support.hpp"

using namespace kgforge;
using namespace kgforge::ingest;

namespace {

std::string parse_error(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("tsv: single line and comments") {
  CHECK(parse_tsv("A\tr\tB\n") == std::vector<Triple>{{"A", "r", "B"}});
  CHECK(parse_tsv("# comment\nA\tr\tB\n") == std::vector<Triple>{{"A", "r", "B"}});
  CHECK(parse_tsv("A\tr\tB") == std::vector<Triple>{{"A", "r", "B"}});
  CHECK(parse_tsv("\n  \nA\tr\tB\r\n\n").size() == 1);
}

TEST_CASE("tsv: fields are trimmed") {
  CHECK(parse_tsv(" A \t r\tB  \n") == std::vector<Triple>{{"A", "r", "B"}});
}

TEST_CASE("tsv: malformed lines carry line numbers") {
  CHECK(parse_error([] { parse_tsv("A\tr\n"); }) == "line 1: expected 3 fields, got 2");
  CHECK(parse_error([] { parse_tsv("A\tr\tB\nA\tr\tB\tC\n"); }) == "line 2: expected 3 fields, got 4");
  CHECK(parse_error([] { parse_tsv("# x\nA\t \tB\n"); }) == "line 2: empty field");
  try {
    parse_tsv("A\tr\tB\n\nbad\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("tsv: writer round-trip") {
  testing::TempDir dir;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    std::vector<Triple> triples;
    for (int i = 0; i < 30; ++i) {
      auto label = [&] {
        std::string s;
        const auto n = 1 + rng.below(12);
        for (std::uint64_t k = 0; k < n; ++k) s += static_cast<char>('!' + rng.below(94));
        if (s.front() == '#') s.front() = 'x';
        return s;
      };
      triples.push_back({label(), label(), label()});
    }
    const auto path = dir / ("t" + std::to_string(seed) + ".tsv");
    write_triples(path, triples);
    CHECK(read_tsv(path) == triples);
  }
}

TEST_CASE("ntriples: IRIs lose their brackets") {
  CHECK(parse_ntriples("<a> <r> <b> .\n") == std::vector<Triple>{{"a", "r", "b"}});
  CHECK(parse_ntriples("<http://x.org/a>\t<http://x.org/r>   <http://x.org/b>.") ==
        std::vector<Triple>{{"http://x.org/a", "http://x.org/r", "http://x.org/b"}});
}

TEST_CASE("ntriples: literals keep their full lexical form") {
  CHECK(parse_ntriples("<a> <r> \"5\"^^<int> .") == std::vector<Triple>{{"a", "r", "\"5\"^^<int>"}});
  CHECK(parse_ntriples("<a> <r> \"chat\"@fr .") == std::vector<Triple>{{"a", "r", "\"chat\"@fr"}});
  CHECK(parse_ntriples("<a> <r> \"say \\\"hi\\\"\" .") == std::vector<Triple>{{"a", "r", "\"say \\\"hi\\\"\""}});
  CHECK(parse_ntriples("<a> <r> \"x . y\" .") == std::vector<Triple>{{"a", "r", "\"x . y\""}});
}

TEST_CASE("ntriples: blank nodes, comments and blank lines") {
  const auto out = parse_ntriples("# header\n\n_:b1 <r> _:b2 .\n<a> <r> <b> . # trailing\n");
  CHECK(out == std::vector<Triple>{{"_:b1", "r", "_:b2"}, {"a", "r", "b"}});
}

TEST_CASE("ntriples: malformed statements") {
  CHECK(parse_error([] { parse_ntriples("<a> <r> <b>"); }) == "line 1: missing statement terminator");
  CHECK(parse_error([] { parse_ntriples("<a> <r> <b> .\n<a> <r> \"open ."); }) == "line 2: unterminated literal");
  CHECK(parse_error([] { parse_ntriples("<a> <r> <b ."); }).starts_with("line 1: un"));
  CHECK(parse_error([] { parse_ntriples("<a <r> <b> ."); }) == "line 1: unbalanced angle brackets in IRI");
  CHECK(parse_error([] { parse_ntriples("<a> <r> <b> . <c>"); }) ==
        "line 1: unexpected content after statement terminator");
  CHECK(parse_error([] { parse_ntriples("<a> \"r\" <b> ."); }).starts_with("line 1:"));
  CHECK(parse_error([] { parse_ntriples("<a> <r> ."); }).starts_with("line 1:"));
}

TEST_CASE("ntriples: file order is kept, duplicates too") {
  const auto out = parse_ntriples("<b> <r> <a> .\n<a> <r> <b> .\n<b> <r> <a> .\n");
  REQUIRE(out.size() == 3);
  CHECK(out[0].head == "b");
  CHECK(out[2] == out[0]);
}

TEST_CASE("cx: nodes and edges become triples") {
  const std::string doc = R"([
    {"nodes": [{"@id": 1, "n": "A"}, {"@id": 2, "n": "B"}]},
    {"edges": [{"@id": 3, "s": 1, "t": 2, "i": "partOf"}]}
  ])";
  CHECK(parse_cx(doc) == std::vector<Triple>{{"A", "partOf", "B"}});
}

TEST_CASE("cx: default relation and unnamed nodes") {
  const std::string doc = R"([{"nodes": [{"@id": 1, "n": "A"}, {"@id": 2, "n": "B"}, {"@id": 7}]},
                               {"edges": [{"s": 1, "t": 2}, {"s": 7, "t": 1, "i": ""}]}])";
  CHECK(parse_cx(doc) == std::vector<Triple>{{"A", "interacts_with", "B"}, {"node:7", "interacts_with", "A"}});
}

TEST_CASE("cx: edges may precede nodes across fragments") {
  const std::string doc = R"([{"edges": [{"s": 1, "t": 2, "i": "x"}]}, {"nodes": [{"@id": 1, "n": "A"}]},
                               {"nodes": [{"@id": 2, "n": "B"}]}])";
  CHECK(parse_cx(doc) == std::vector<Triple>{{"A", "x", "B"}});
}

TEST_CASE("cx: errors") {
  CHECK(parse_error([] {
          parse_cx(R"([{"nodes": [{"@id": 1, "n": "A"}]}, {"edges": [{"s": 9, "t": 1}]}])");
        }) == "edge references unknown node 9");
  CHECK(parse_error([] { parse_cx("[{\"nodes\": ["); }).starts_with("malformed CX JSON"));
  CHECK_THROWS_AS(parse_cx(R"({"nodes": []})"), ParseError);
  CHECK_THROWS_AS(parse_cx(R"([{"edges": [{"t": 1}]}])"), ParseError);
}

TEST_CASE("format names") {
  CHECK(parse_source_format("tsv") == SourceFormat::kTsv);
  CHECK(parse_source_format("ntriples") == SourceFormat::kNTriples);
  CHECK(parse_source_format("cx") == SourceFormat::kCx);
  CHECK_THROWS_AS(parse_source_format("ttl"), Error);
}

TEST_CASE("read_triples dispatches on format") {
  testing::TempDir dir;
  testing::write_text(dir / "g.nt", "<a> <r> <b> .\n");
  testing::write_text(dir / "g.tsv", "a\tr\tb\n");
  CHECK(read_triples(dir / "g.nt", SourceFormat::kNTriples) == read_triples(dir / "g.tsv", SourceFormat::kTsv));
  CHECK(read_triples(KGFORGE_FIXTURE_DIR "/ndex/pathway_small.cx", SourceFormat::kCx).size() == 5);
  CHECK_THROWS_AS(read_tsv(dir / "absent.tsv"), Error);
}
