#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phonitale/syllable.hpp"

namespace phonitale {

enum class PartOfSpeech { NOUN, VERB, ADJ, ADV, OTHER };

PartOfSpeech parse_pos(const std::string& tag);
std::string to_string(PartOfSpeech pos);

struct LexiconEntry {
  std::string surface;  // Hangul
  PhonemeSequence ipa;
  SyllableSequence syllables;
  PartOfSpeech pos = PartOfSpeech::OTHER;
  std::optional<std::string> gloss;
  std::optional<std::uint64_t> frequency;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  // Tab-separated, header required:
  // surface, ipa, syllables ('.'-separated), pos, gloss, frequency.
  static Lexicon load(const std::string& path,
                      const PhonemeInventory& l1_inventory);

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // First-syllable pruning index; optional aid, never changes results.
  const std::map<std::string, std::vector<std::size_t>>& index() const {
    return index_;
  }

 private:
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::vector<std::size_t>> index_;
};

}  // namespace phonitale
