#pragma once

#include <string>

#include "phonitale/cue.hpp"

namespace phonitale {

// GeneratorClient over HTTP: POST {model, prompt, n, temperature} to the
// endpoint path, expecting {"candidates": [text, ...]} back. The credential
// is read from an environment variable, never from config or flags.
class HttpGeneratorClient : public GeneratorClient {
 public:
  HttpGeneratorClient(std::string host, int port, std::string path,
                      std::string model, std::string credential_env,
                      int max_retries = 2);

  std::vector<std::string> complete(const std::string& prompt, std::size_t n,
                                    double temperature) const override;

 private:
  std::string host_;
  int port_;
  std::string path_;
  std::string model_;
  std::string credential_;
  int max_retries_;
};

}  // namespace phonitale
