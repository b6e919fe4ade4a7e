#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phonitale/errors.hpp"

namespace phonitale {

inline constexpr std::size_t kFeatureDim = 22;

// Feature order used by the bundled table.
inline constexpr std::array<const char*, kFeatureDim> kFeatureNames = {
    "syl",  "son",   "cons", "cont",  "delrel", "lat",  "nas",  "strid",
    "voi",  "sg",    "cg",   "ant",   "cor",    "distr", "lab", "hi",
    "lo",   "back",  "round", "velaric", "tense", "long"};

enum class LanguageTag { L1_KO, L2_EN };

std::string to_string(LanguageTag tag);

// One IPA segment: a base codepoint plus attached modifiers (tʰ, t͡ʃ, ...),
// with a ternary articulatory feature bundle.
struct Phoneme {
  std::string symbol;
  std::array<int8_t, kFeatureDim> features{};
  bool is_vowel = false;

  bool operator==(const Phoneme& other) const { return symbol == other.symbol; }
};

class PhonemeInventory {
 public:
  PhonemeInventory() = default;
  PhonemeInventory(LanguageTag tag, std::vector<Phoneme> phonemes);

  // Loads the feature table and an inventory file (see data/ formats).
  static PhonemeInventory load(LanguageTag tag,
                               const std::string& feature_table_path,
                               const std::string& inventory_path);

  LanguageTag language_tag() const { return tag_; }
  bool contains(const std::string& symbol) const;
  const Phoneme& at(const std::string& symbol) const;
  const Phoneme* find(const std::string& symbol) const;
  std::size_t size() const { return by_symbol_.size(); }
  const std::map<std::string, Phoneme>& phonemes() const { return by_symbol_; }
  std::size_t max_symbol_bytes() const { return max_symbol_bytes_; }

 private:
  LanguageTag tag_ = LanguageTag::L1_KO;
  std::map<std::string, Phoneme> by_symbol_;
  std::size_t max_symbol_bytes_ = 0;
};

struct FeatureEmbedding {
  std::array<double, kFeatureDim> values{};
};

class PhonemeSequence {
 public:
  PhonemeSequence() = default;
  PhonemeSequence(std::vector<Phoneme> phonemes, LanguageTag tag)
      : phonemes_(std::move(phonemes)), tag_(tag) {}

  const std::vector<Phoneme>& phonemes() const { return phonemes_; }
  LanguageTag language_tag() const { return tag_; }
  bool empty() const { return phonemes_.empty(); }
  std::size_t size() const { return phonemes_.size(); }
  const Phoneme& operator[](std::size_t i) const { return phonemes_[i]; }

  bool operator==(const PhonemeSequence& other) const {
    if (tag_ != other.tag_ || phonemes_.size() != other.phonemes_.size())
      return false;
    for (std::size_t i = 0; i < phonemes_.size(); ++i)
      if (!(phonemes_[i] == other.phonemes_[i])) return false;
    return true;
  }

 private:
  std::vector<Phoneme> phonemes_;
  LanguageTag tag_ = LanguageTag::L1_KO;
};

// NFC is assumed; applies the small ascii canonicalization map (g -> ɡ) and
// strips stress/length marks.
std::string normalize_ipa(const std::string& text);

// Greedy longest-match tokenization. Concatenating the result symbols
// reproduces the (normalized) input exactly.
PhonemeSequence parse_ipa(const std::string& text,
                          const PhonemeInventory& inventory);

std::string render_ipa(const PhonemeSequence& seq);

// Element-wise mean of the per-phoneme feature vectors.
FeatureEmbedding embed(const PhonemeSequence& seq);

double cosine(const FeatureEmbedding& a, const FeatureEmbedding& b);

}  // namespace phonitale
