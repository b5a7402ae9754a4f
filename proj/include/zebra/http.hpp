// Copyright 2026 The zebra-qa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "zebra/error.hpp"

namespace zebra {

struct HttpResponse {
  int status = 0;
  std::string body;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

/// Network failure before any HTTP status was received.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Minimal POST-JSON seam so remote clients can be exercised with stubs.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  /// `url` is absolute (scheme://host[:port]/path). Throws TransportError.
  virtual HttpResponse post_json(const std::string& url, const std::string& body,
                                 const HttpHeaders& headers) = 0;
};

std::shared_ptr<HttpTransport> make_http_transport(
    std::chrono::seconds timeout = std::chrono::seconds(120));

/// Reads an API key from the named environment variable; empty name or
/// unset variable yields an empty string.
std::string api_key_from_env(const std::string& env_name);

}  // namespace zebra
