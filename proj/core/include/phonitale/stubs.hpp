#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phonitale/cue.hpp"

namespace phonitale {

// Deterministic offline generator. Completions are a pure function of
// (seed, prompt, candidate index), so results are identical regardless of
// call order or concurrency.
class StubGeneratorClient : public GeneratorClient {
 public:
  explicit StubGeneratorClient(std::uint64_t seed) : seed_(seed) {}

  std::vector<std::string> complete(const std::string& prompt, std::size_t n,
                                    double temperature) const override;

 private:
  std::uint64_t seed_;
};

// Character n-gram hashing embedder, d = 64.
class StubEmbedder : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDim = 64;
  std::vector<double> vec(const std::string& token) const override;
  std::size_t dim() const override { return kDim; }
};

// Length-normalized character-bigram surprisal over a bundled frequency
// table; add-one smoothed, so ppl > 1 always holds.
class StubPerplexity : public PerplexityScorer {
 public:
  static StubPerplexity load(const std::string& bigram_table_path);

  double ppl(const std::string& text) const override;

 private:
  std::map<std::pair<char32_t, char32_t>, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::size_t vocab_ = 0;
};

}  // namespace phonitale
