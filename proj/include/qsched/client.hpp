// Copyright 2026 The qsched Authors
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

#include <cstdint>
#include <string>

namespace qsched {

struct ClientResponse {
  int status = 0;
  std::string body;
};

// Thin HTTP helpers over cpp-httplib. `server` is "http://host:port" or
// "host:port". A transport failure throws Error(Connection); any HTTP status,
// including 4xx/5xx, is returned to the caller.
ClientResponse http_get(const std::string& server, const std::string& path);
ClientResponse http_post_json(const std::string& server, const std::string& path,
                              const std::string& body);

// POST /circuits; returns the new job id. Non-201 replies throw Error(Api)
// whose message is the server's error body.
std::string submit_circuit(const std::string& server, const std::string& format,
                           const std::string& payload, std::uint64_t shots,
                           const std::string& name = {});

}  // namespace qsched
