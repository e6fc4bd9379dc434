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

#include "qsched/client.hpp"

#include <httplib.h>
#include <json.hpp>

#include "qsched/error.hpp"

namespace qsched {
namespace {

httplib::Client make_client(const std::string& server) {
  const std::string url = server.find("://") == std::string::npos ? "http://" + server : server;
  httplib::Client client(url);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  return client;
}

ClientResponse unwrap(const httplib::Result& res, const std::string& server) {
  if (!res) {
    throw Error(ErrorCode::Connection,
                "cannot reach " + server + ": " + httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace

ClientResponse http_get(const std::string& server, const std::string& path) {
  auto client = make_client(server);
  return unwrap(client.Get(path), server);
}

ClientResponse http_post_json(const std::string& server, const std::string& path,
                              const std::string& body) {
  auto client = make_client(server);
  return unwrap(client.Post(path, body, "application/json"), server);
}

std::string submit_circuit(const std::string& server, const std::string& format,
                           const std::string& payload, std::uint64_t shots,
                           const std::string& name) {
  nlohmann::json req = {{"format", format}, {"payload", payload}, {"shots", shots}};
  if (!name.empty()) req["name"] = name;
  const ClientResponse res = http_post_json(server, "/circuits", req.dump());
  if (res.status != 201) {
    throw Error(ErrorCode::Api, "HTTP " + std::to_string(res.status) + ": " + res.body,
                std::to_string(res.status));
  }
  const auto reply = nlohmann::json::parse(res.body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("job_id")) {
    throw Error(ErrorCode::Api, "malformed reply: " + res.body);
  }
  return reply["job_id"].get<std::string>();
}

}  // namespace qsched
