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

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/error.hpp"
#include "kgforge/kg.hpp"

namespace kgforge::ingest {

enum class SourceFormat { kTsv, kNTriples, kCx };

SourceFormat parse_source_format(std::string_view s);
std::string_view to_string(SourceFormat f);

/// Three TAB-separated columns per line. Blank lines and lines starting
/// with '#' are skipped; fields are whitespace-trimmed.
std::vector<Triple> parse_tsv(std::string_view text);
std::vector<Triple> read_tsv(const std::filesystem::path& path);

/// Line-oriented N-Triples subset. IRIs lose their angle brackets, literals
/// keep their full lexical form (quotes, @lang, ^^<datatype>), blank nodes
/// are kept as written.
std::vector<Triple> parse_ntriples(std::string_view text);
std::vector<Triple> read_ntriples(const std::filesystem::path& path);

/// CX network-exchange JSON: an array of aspect fragments. Each edge of the
/// `edges` aspects becomes (source name, interaction, target name).
std::vector<Triple> parse_cx(std::string_view text);
std::vector<Triple> read_cx(const std::filesystem::path& path);

std::vector<Triple> read_triples(const std::filesystem::path& path, SourceFormat format);

std::string read_file(const std::filesystem::path& path);

/// Relation label used for CX edges without an interaction.
inline constexpr std::string_view kDefaultCxRelation = "interacts_with";

// ---------------------------------------------------------------------------
// Remote network fetch

inline constexpr std::chrono::milliseconds kDefaultFetchTimeout{30'000};

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Failure of a remote fetch. status() is the HTTP status, or 0 when the
/// request never produced a response (see cause()).
class FetchError : public Error {
 public:
  FetchError(int status, std::string cause, const std::string& what)
      : Error(what), status_(status), cause_(std::move(cause)) {}

  int status() const noexcept { return status_; }
  const std::string& cause() const noexcept { return cause_; }

 private:
  int status_;
  std::string cause_;
};

/// Blocking single-request HTTP GET. Implementations throw FetchError with
/// status 0 when no response arrives ("timeout", "connection").
class HttpClient {
 public:
  virtual ~HttpClient() = default;
  virtual HttpResponse get(const std::string& url, std::chrono::milliseconds timeout) = 0;
};

/// Live client backed by cpp-httplib.
class NetworkHttpClient final : public HttpClient {
 public:
  HttpResponse get(const std::string& url, std::chrono::milliseconds timeout) override;
};

/// Replays recorded responses. A fixture directory holds `index.json`, an
/// object mapping request URL to {"status": int, "body_file": name}.
/// Unrecorded URLs answer 404.
class FixtureHttpClient final : public HttpClient {
 public:
  explicit FixtureHttpClient(const std::filesystem::path& fixture_dir);

  HttpResponse get(const std::string& url, std::chrono::milliseconds timeout) override;

  const std::vector<std::string>& requests() const { return requests_; }

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::pair<int, std::string>> recorded_;
  std::vector<std::string> requests_;
};

/// GET `<endpoint>/network/<network_id>` and return the raw CX document.
/// Non-2xx statuses become FetchError carrying the status. Never retries.
std::string fetch_network(HttpClient& client, const std::string& network_id,
                          const std::string& endpoint,
                          std::chrono::milliseconds timeout = kDefaultFetchTimeout);

std::string network_url(const std::string& endpoint, const std::string& network_id);

}  // namespace kgforge::ingest
