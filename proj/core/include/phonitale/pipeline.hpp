#pragma once

#include <memory>
#include <string>
#include <vector>

#include "phonitale/cue.hpp"
#include "phonitale/http_client.hpp"
#include "phonitale/matching.hpp"
#include "phonitale/metrics.hpp"
#include "phonitale/stubs.hpp"
#include "phonitale/translit.hpp"

namespace phonitale {

struct ClientSettings {
  std::string mode = "stub";  // "stub" or "live"
  std::string host;
  int port = 443;
  std::string path = "/v1/complete";
  std::string model;
  std::string credential_env = "PHONITALE_API_KEY";
  double temperature = 0.7;
};

struct PipelineConfig {
  std::string feature_table;
  std::string inventory_l2;
  std::string inventory_l1;
  std::string coda_set;
  std::string rules;
  std::string lexicon;
  std::string prompt_template;
  std::string bigram_table;
  std::string manifest;  // optional: checksums verified when set

  StructuralWeights weights;
  std::size_t max_k = 2;
  std::size_t overgenerate_n = 5;
  ClientSettings client;
  std::size_t concurrency = 4;
  std::uint64_t seed = 42;

  // Relative paths are resolved against the config file's directory.
  static PipelineConfig load(const std::string& path);
};

// 64-bit FNV-1a over the file bytes, lower-case hex.
std::string file_checksum(const std::string& path);

// Verifies every listed file; throws ConfigError on mismatch.
void verify_manifest(const std::string& manifest_path,
                     const std::vector<std::string>& files);

struct RankedCue {
  VerbalCue cue;
  double cc = 0.0;
  double ppl = 0.0;
};

struct MnemonicResult {
  std::string l2_word;
  std::vector<std::string> glosses;
  std::string error;  // non-empty when this record failed
  PhonemeSequence adapted_ipa;
  SyllableSequence syllables;
  KeywordSequence keywords;
  std::vector<RankedCue> cues;  // ranked, best first
  std::optional<std::size_t> chosen_cue;  // index into cues
};

// All immutable pipeline assets, loaded once.
class Pipeline {
 public:
  explicit Pipeline(const PipelineConfig& config);

  const PipelineConfig& config() const { return config_; }
  const PhonemeInventory& inventory_l2() const { return inv_l2_; }
  const PhonemeInventory& inventory_l1() const { return inv_l1_; }
  const RuleSet& rules() const { return rules_; }
  const std::set<std::string>& coda_set() const { return coda_; }
  const Lexicon& lexicon() const { return lexicon_; }
  const PromptTemplate& prompt_template() const { return tmpl_; }
  const GeneratorClient& client() const { return *client_; }
  const EmbeddingProvider& embedder() const { return embedder_; }
  const PerplexityScorer& perplexity() const { return ppl_; }

  PhonemeSequence transliterate(const std::string& l2_ipa_text) const;
  MnemonicResult retrieve(const std::string& l2_word,
                          const std::string& l2_ipa_text,
                          const std::vector<std::string>& glosses) const;
  // retrieve + cue generation + ranking.
  MnemonicResult run(const std::string& l2_word, const std::string& l2_ipa_text,
                     const std::vector<std::string>& glosses) const;
  void generate_for(MnemonicResult& result) const;

 private:
  PipelineConfig config_;
  PhonemeInventory inv_l2_;
  PhonemeInventory inv_l1_;
  RuleSet rules_;
  std::set<std::string> coda_;
  Lexicon lexicon_;
  PromptTemplate tmpl_;
  std::unique_ptr<GeneratorClient> client_;
  StubEmbedder embedder_;
  StubPerplexity ppl_;
};

std::string result_to_json(const MnemonicResult& result);
MnemonicResult result_from_json(const std::string& text, const Pipeline& pipeline);
std::string result_to_table(const MnemonicResult& result);

}  // namespace phonitale
