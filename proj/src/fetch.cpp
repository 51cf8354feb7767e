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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <json.hpp>

#include "kgforge/ingest.hpp"
#include "kgforge/log.hpp"

namespace kgforge::ingest {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw FetchError(0, "url", "invalid URL '" + url + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string network_url(const std::string& endpoint, const std::string& network_id) {
  std::string base = endpoint;
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + "/network/" + network_id;
}

HttpResponse NetworkHttpClient::get(const std::string& url, std::chrono::milliseconds timeout) {
  const auto parts = split_url(url);
  httplib::Client client(parts.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_follow_location(true);

  const auto started = std::chrono::steady_clock::now();
  auto result = client.Get(parts.path);
  if (!result) {
    const auto err = result.error();
    const auto elapsed = std::chrono::steady_clock::now() - started;
    // Refusals can surface as ConnectionTimeout too; only elapsed time tells them apart.
    const bool timed_out =
        (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) && elapsed >= timeout;
    const std::string cause = timed_out ? "timeout" : "connection";
    throw FetchError(0, cause, "GET " + url + " failed (" + cause + "): " + httplib::to_string(err));
  }
  return {result->status, result->body};
}

FixtureHttpClient::FixtureHttpClient(const std::filesystem::path& fixture_dir) : dir_(fixture_dir) {
  const auto index = nlohmann::json::parse(read_file(dir_ / "index.json"));
  for (const auto& item : index.items()) {
    recorded_[item.key()] = {item.value().at("status").get<int>(),
                             item.value().value("body_file", std::string())};
  }
}

HttpResponse FixtureHttpClient::get(const std::string& url, std::chrono::milliseconds) {
  requests_.push_back(url);
  auto it = recorded_.find(url);
  if (it == recorded_.end()) return {404, ""};
  const auto& [status, body_file] = it->second;
  return {status, body_file.empty() ? std::string() : read_file(dir_ / body_file)};
}

std::string fetch_network(HttpClient& client, const std::string& network_id,
                          const std::string& endpoint, std::chrono::milliseconds timeout) {
  const auto url = network_url(endpoint, network_id);
  logger().info("fetching {}", url);
  auto response = client.get(url, timeout);
  if (response.status < 200 || response.status >= 300) {
    throw FetchError(response.status, "status",
                     "GET " + url + " returned status " + std::to_string(response.status));
  }
  return std::move(response.body);
}

}  // namespace kgforge::ingest
