// Copyright 2026 The kgqa Authors.
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

#include "kgqa/http.h"

#include <httplib.h>

#include "kgqa/error.h"

namespace kgqa {
namespace {

void ConfigureClient(httplib::Client& client, std::chrono::milliseconds timeout) {
  auto seconds = static_cast<time_t>(timeout.count() / 1000);
  auto usec = static_cast<time_t>((timeout.count() % 1000) * 1000);
  client.set_connection_timeout(seconds, usec);
  client.set_read_timeout(seconds, usec);
  client.set_write_timeout(seconds, usec);
  client.set_follow_location(true);
}

[[noreturn]] void ThrowTransport(httplib::Error err,
                                 std::chrono::steady_clock::duration elapsed,
                                 std::chrono::milliseconds timeout,
                                 const std::string& url) {
  bool timed_out = err == httplib::Error::ConnectionTimeout ||
                   (err == httplib::Error::Read && elapsed >= timeout);
  throw HttpError(timed_out ? HttpError::Kind::kTimeout : HttpError::Kind::kNetwork,
                  url + ": " + httplib::to_string(err));
}

HttpResponse Finish(const httplib::Result& result,
                    std::chrono::steady_clock::time_point start,
                    std::chrono::milliseconds timeout, const std::string& url) {
  if (!result) {
    ThrowTransport(result.error(), std::chrono::steady_clock::now() - start,
                   timeout, url);
  }
  return HttpResponse{result->status, result->body};
}

}  // namespace

ConcurrencyLimiter::ConcurrencyLimiter(std::ptrdiff_t max_in_flight)
    : sem_(std::make_shared<std::counting_semaphore<>>(
          max_in_flight > 0 ? max_in_flight : 1)) {}

HttpClient::HttpClient(const std::string& base_url,
                       std::chrono::milliseconds timeout, std::string user_agent)
    : base_url_(base_url), timeout_(timeout), user_agent_(std::move(user_agent)) {
  auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidConfig, "URL lacks a scheme: " + base_url);
  }
  auto path_start = base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    origin_ = base_url;
  } else {
    origin_ = base_url.substr(0, path_start);
    base_path_ = base_url.substr(path_start);
  }
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
  if (timeout_.count() <= 0) {
    throw Error(ErrorCode::kInvalidConfig, "HTTP timeout must be positive");
  }
}

HttpResponse HttpClient::Get(const std::string& path, const Params& params,
                             const Headers& headers) const {
  httplib::Client client(origin_);
  ConfigureClient(client, timeout_);
  httplib::Headers h(headers.begin(), headers.end());
  h.emplace("User-Agent", user_agent_);
  std::string full = base_path_ + path;
  if (full.empty()) full = "/";
  auto start = std::chrono::steady_clock::now();
  auto result = client.Get(full, httplib::Params(params.begin(), params.end()), h);
  return Finish(result, start, timeout_, origin_ + full);
}

HttpResponse HttpClient::PostJson(const std::string& path,
                                  const std::string& body,
                                  const Headers& headers) const {
  httplib::Client client(origin_);
  ConfigureClient(client, timeout_);
  httplib::Headers h(headers.begin(), headers.end());
  h.emplace("User-Agent", user_agent_);
  std::string full = base_path_ + path;
  if (full.empty()) full = "/";
  auto start = std::chrono::steady_clock::now();
  auto result = client.Post(full, h, body, "application/json");
  return Finish(result, start, timeout_, origin_ + full);
}

HttpResponse HttpClient::PostForm(const std::string& path, const Params& params,
                                  const Headers& headers) const {
  httplib::Client client(origin_);
  ConfigureClient(client, timeout_);
  httplib::Headers h(headers.begin(), headers.end());
  h.emplace("User-Agent", user_agent_);
  std::string full = base_path_ + path;
  if (full.empty()) full = "/";
  auto start = std::chrono::steady_clock::now();
  auto result = client.Post(full, h, httplib::Params(params.begin(), params.end()));
  return Finish(result, start, timeout_, origin_ + full);
}

}  // namespace kgqa
