#include "phonitale/http_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace phonitale {

HttpGeneratorClient::HttpGeneratorClient(std::string host, int port,
                                         std::string path, std::string model,
                                         std::string credential_env,
                                         int max_retries)
    : host_(std::move(host)),
      port_(port),
      path_(std::move(path)),
      model_(std::move(model)),
      max_retries_(max_retries) {
  if (!credential_env.empty()) {
    if (const char* v = std::getenv(credential_env.c_str())) credential_ = v;
  }
}

std::vector<std::string> HttpGeneratorClient::complete(
    const std::string& prompt, std::size_t n, double temperature) const {
  nlohmann::json body = {{"model", model_},
                         {"prompt", prompt},
                         {"n", n},
                         {"temperature", temperature}};
  const std::string payload = body.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= max_retries_; ++attempt) {
    if (attempt > 0) {
      // exponential backoff: 100ms, 200ms
      std::this_thread::sleep_for(std::chrono::milliseconds(100 << (attempt - 1)));
    }
    httplib::Client cli(host_, port_);
    httplib::Headers headers;
    if (!credential_.empty())
      headers.emplace("Authorization", "Bearer " + credential_);
    auto res = cli.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server error: HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw ClientError("HTTP " + std::to_string(res->status) + ": " + res->body);

    nlohmann::json obj = nlohmann::json::parse(res->body, nullptr, false);
    if (obj.is_discarded() || !obj.contains("candidates") ||
        !obj["candidates"].is_array())
      throw ClientError("malformed response: expected {\"candidates\": [...]}");
    std::vector<std::string> out;
    for (const auto& c : obj["candidates"]) {
      if (!c.is_string()) throw ClientError("non-string candidate in response");
      out.push_back(c.get<std::string>());
    }
    if (out.size() != n)
      throw ClientError("expected " + std::to_string(n) + " candidates, got " +
                        std::to_string(out.size()));
    return out;
  }
  throw ClientError("generation request failed after retries: " + last_error);
}

}  // namespace phonitale
