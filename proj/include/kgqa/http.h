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

#ifndef KGQA_HTTP_H_
#define KGQA_HTTP_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <semaphore>
#include <stdexcept>
#include <string>

namespace kgqa {

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Transport-level failure: no HTTP status was received.
class HttpError : public std::runtime_error {
 public:
  enum class Kind { kNetwork, kTimeout };
  HttpError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Caps the number of requests in flight across all copies of a client.
class ConcurrencyLimiter {
 public:
  explicit ConcurrencyLimiter(std::ptrdiff_t max_in_flight);

  class Slot {
   public:
    explicit Slot(std::counting_semaphore<>& sem) : sem_(&sem) { sem_->acquire(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;
    ~Slot() { sem_->release(); }

   private:
    std::counting_semaphore<>* sem_;
  };

  Slot Acquire() const { return Slot(*sem_); }

 private:
  std::shared_ptr<std::counting_semaphore<>> sem_;
};

// Minimal blocking HTTP(S) client bound to one base URL such as
// "https://query.wikidata.org/sparql". Request paths are appended to the
// base path. Safe for concurrent use; each request opens its own connection.
class HttpClient {
 public:
  using Headers = std::multimap<std::string, std::string>;
  using Params = std::multimap<std::string, std::string>;

  HttpClient(const std::string& base_url, std::chrono::milliseconds timeout,
             std::string user_agent = "kgqa/1.0");

  HttpResponse Get(const std::string& path, const Params& params = {},
                   const Headers& headers = {}) const;
  HttpResponse PostJson(const std::string& path, const std::string& body,
                        const Headers& headers = {}) const;
  HttpResponse PostForm(const std::string& path, const Params& params,
                        const Headers& headers = {}) const;

  const std::string& base_url() const { return base_url_; }

 private:
  std::string base_url_;
  std::string origin_;     // scheme://host[:port]
  std::string base_path_;  // path component without trailing slash
  std::chrono::milliseconds timeout_;
  std::string user_agent_;
};

}  // namespace kgqa

#endif  // KGQA_HTTP_H_
