#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phonitale/errors.hpp"
#include "phonitale/matching.hpp"

namespace phonitale {

struct VocabEntry {
  std::string l2_word;
  std::vector<std::string> glosses;  // L1 target-word candidates
};

struct VerbalCue {
  std::string text;          // the one-sentence story
  std::string chosen_gloss;  // the 목표 단어 field
  std::pair<std::size_t, std::size_t> target_span;  // byte range incl. brackets
  std::vector<std::pair<std::string, std::optional<std::pair<std::size_t, std::size_t>>>>
      keyword_spans;  // in proposed keyword order
  bool order_violation = false;
};

struct DroppedCandidate {
  std::string raw;
  std::string reason;
};

class GeneratorClient {
 public:
  virtual ~GeneratorClient() = default;
  // Returns exactly n texts or throws ClientError.
  virtual std::vector<std::string> complete(const std::string& prompt,
                                            std::size_t n,
                                            double temperature) const = 0;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<double> vec(const std::string& token) const = 0;
  virtual std::size_t dim() const = 0;
};

class PerplexityScorer {
 public:
  virtual ~PerplexityScorer() = default;
  virtual double ppl(const std::string& text) const = 0;
};

class PromptTemplate {
 public:
  // UTF-8 text file with {{glosses}} and {{keywords}} placeholders.
  static PromptTemplate load(const std::string& path);
  explicit PromptTemplate(std::string text);

  std::string fill(const VocabEntry& entry,
                   const std::vector<std::string>& keyword_surfaces) const;
  const std::string& raw() const { return text_; }

 private:
  std::string text_;
};

std::string build_prompt(const PromptTemplate& tmpl, const VocabEntry& entry,
                         const KeywordSequence& keywords);

// Overgenerate n candidates and keep the parseable ones. Every drop carries a
// machine-readable reason.
std::vector<VerbalCue> generate_cues(const VocabEntry& entry,
                                     const KeywordSequence& keywords,
                                     const PromptTemplate& tmpl,
                                     const GeneratorClient& client,
                                     std::size_t n, double temperature,
                                     std::vector<DroppedCandidate>* dropped = nullptr);

// Masks the target, asks for exactly five fill-in candidates, and averages
// embedding cosine against the chosen gloss.
double context_completeness(const VerbalCue& cue, const GeneratorClient& client,
                            const EmbeddingProvider& embedder,
                            double temperature = 0.7);

// Marker the masked-prediction prompt uses; the bundled stub keys off it.
inline constexpr const char* kMaskMarker = "[빈칸]";

// Sort: context completeness descending, perplexity ascending, stable.
std::vector<std::size_t> rank_cues(const std::vector<VerbalCue>& cues,
                                   const std::vector<double>& cc_scores,
                                   const std::vector<double>& ppl_scores);

}  // namespace phonitale
