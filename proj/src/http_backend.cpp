// Copyright 2026 The netcfg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <semaphore>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "netcfg/errors.hpp"
#include "netcfg/llm_backend.hpp"

namespace netcfg {
namespace {

using Json = nlohmann::json;

constexpr std::string_view kDefaultPath = "/v1/chat/completions";

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint SplitUrl(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) {
    throw ValidationError("unsupported backend URL (only http:// is supported): " + url);
  }
  const std::size_t slash = url.find('/', kScheme.size());
  Endpoint e;
  e.origin = url.substr(0, slash);
  e.path = slash == std::string::npos ? std::string() : url.substr(slash);
  if (e.path.empty() || e.path == "/") e.path = kDefaultPath;
  if (e.origin.size() == kScheme.size()) throw ValidationError("backend URL has no host");
  return e;
}

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendDescriptor d)
      : descriptor_(std::move(d)),
        endpoint_(SplitUrl(*descriptor_.endpoint_url)),
        in_flight_(descriptor_.max_in_flight) {}

  std::string Complete(const PromptBundle& prompt, const DecodingParams& params) override {
    const std::string body = ChatCompletionRequest(prompt, params, descriptor_.model_name);
    in_flight_.acquire();
    struct Release {
      std::counting_semaphore<>& s;
      ~Release() { s.release(); }
    } release{in_flight_};

    auto backoff = descriptor_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
      try {
        return Post(body);
      } catch (const BackendUnavailable&) {
        if (attempt >= descriptor_.retries) throw;
      } catch (const BackendTimeout&) {
        if (attempt >= descriptor_.retries) throw;
      }
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }

 private:
  std::string Post(const std::string& body) {
    httplib::Client client(endpoint_.origin);
    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(descriptor_.timeout_s));
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    const auto micros = timeout - seconds;
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());

    const httplib::Result result = client.Post(endpoint_.path, body, "application/json");
    if (!result) {
      const httplib::Error error = result.error();
      const std::string what = "backend " + endpoint_.origin + ": " + httplib::to_string(error);
      if (error == httplib::Error::Read || error == httplib::Error::Write ||
          error == httplib::Error::ConnectionTimeout) {
        throw BackendTimeout(what);
      }
      throw BackendUnavailable(what);
    }
    if (result->status != 200) {
      throw BackendUnavailable("backend " + endpoint_.origin + " returned HTTP " +
                               std::to_string(result->status));
    }
    return ChatCompletionContent(result->body);
  }

  BackendDescriptor descriptor_;
  Endpoint endpoint_;
  std::counting_semaphore<> in_flight_;
};

}  // namespace

std::string_view ToString(BackendKind kind) {
  return kind == BackendKind::kHttp ? "http" : "rules";
}

std::optional<BackendKind> ParseBackendKind(std::string_view text) {
  if (text == "http") return BackendKind::kHttp;
  if (text == "rules") return BackendKind::kRules;
  return std::nullopt;
}

BackendDescriptor BackendDescriptor::FromEnv(BackendKind kind) {
  BackendDescriptor d;
  d.kind = kind;
  const char* url = std::getenv("NETCFG_LLM_URL");
  if (kind == BackendKind::kHttp && url != nullptr && *url != '\0') {
    d.endpoint_url = url;
  }
  if (const char* model = std::getenv("NETCFG_LLM_MODEL"); model != nullptr && *model != '\0') {
    d.model_name = model;
  }
  if (const char* t = std::getenv("NETCFG_LLM_TIMEOUT_S"); t != nullptr && *t != '\0') {
    char* end = nullptr;
    const double value = std::strtod(t, &end);
    if (end == t || *end != '\0' || !(value > 0)) {
      throw ValidationError(std::string("NETCFG_LLM_TIMEOUT_S must be a positive number: ") + t);
    }
    d.timeout_s = value;
  }
  return d;
}

void BackendDescriptor::Validate() const {
  if (kind == BackendKind::kHttp && !endpoint_url) {
    throw ValidationError("http backend needs an endpoint URL (NETCFG_LLM_URL or --llm-url)");
  }
  if (kind == BackendKind::kRules && endpoint_url) {
    throw ValidationError("rules backend takes no endpoint URL");
  }
  if (!(timeout_s > 0)) throw ValidationError("timeout must be positive");
  if (max_in_flight < 1) throw ValidationError("in-flight cap must be at least 1");
  if (retries < 0) throw ValidationError("retries must not be negative");
}

std::string ChatCompletionRequest(const PromptBundle& prompt, const DecodingParams& params,
                                  const std::optional<std::string>& model_name) {
  Json messages = Json::array();
  for (const PromptMessage& m : prompt.messages) {
    messages.push_back({{"role", ToString(m.role)}, {"content", m.content}});
  }
  Json body = {{"model", model_name.value_or("default")},
               {"messages", std::move(messages)},
               {"temperature", params.temperature},
               {"max_tokens", params.max_tokens}};
  if (!params.stop_sequences.empty()) body["stop"] = params.stop_sequences;
  return body.dump();
}

std::string ChatCompletionContent(std::string_view body) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw BackendUnavailable(std::string("backend returned malformed JSON: ") + e.what());
  }
  const Json* content = nullptr;
  if (doc.is_object() && doc.contains("choices") && doc["choices"].is_array() &&
      !doc["choices"].empty()) {
    const Json& choice = doc["choices"][0];
    if (choice.is_object() && choice.contains("message") && choice["message"].is_object() &&
        choice["message"].contains("content")) {
      content = &choice["message"]["content"];
    }
  }
  if (content == nullptr || !(content->is_string() || content->is_null())) {
    throw BackendUnavailable("backend response has no choices[0].message.content");
  }
  if (content->is_null() || content->get<std::string>().find_first_not_of(" \t\r\n") ==
                                std::string::npos) {
    throw EmptyCompletion("backend returned an empty completion");
  }
  return content->get<std::string>();
}

std::unique_ptr<Backend> MakeHttpBackend(const BackendDescriptor& descriptor) {
  if (descriptor.kind != BackendKind::kHttp) {
    throw ValidationError("MakeHttpBackend needs an http descriptor");
  }
  descriptor.Validate();
  return std::make_unique<HttpBackend>(descriptor);
}

std::unique_ptr<Backend> MakeBackend(const BackendDescriptor& descriptor, RulesOptions rules) {
  descriptor.Validate();
  if (descriptor.kind == BackendKind::kHttp) return MakeHttpBackend(descriptor);
  return MakeRulesBackend(std::move(rules));
}

}  // namespace netcfg
