#pragma once

// Shared fixtures for the test suites. Data paths come from compile
// definitions so the binaries run from any working directory.
#include <random>
#include <string>

#include "phonitale/pipeline.hpp"

#ifndef PHONITALE_DATA_DIR
#error "PHONITALE_DATA_DIR must be defined"
#endif
#ifndef PHONITALE_TEST_DATA_DIR
#error "PHONITALE_TEST_DATA_DIR must be defined"
#endif

namespace testutil {

inline std::string data(const std::string& name) {
  return std::string(PHONITALE_DATA_DIR) + "/" + name;
}

inline std::string test_data(const std::string& name) {
  return std::string(PHONITALE_TEST_DATA_DIR) + "/" + name;
}

inline const phonitale::PhonemeInventory& en_inventory() {
  static const phonitale::PhonemeInventory inv = phonitale::PhonemeInventory::load(
      phonitale::LanguageTag::L2_EN, data("features.tsv"), data("inventory_en.tsv"));
  return inv;
}

inline const phonitale::PhonemeInventory& ko_inventory() {
  static const phonitale::PhonemeInventory inv = phonitale::PhonemeInventory::load(
      phonitale::LanguageTag::L1_KO, data("features.tsv"), data("inventory_ko.tsv"));
  return inv;
}

inline const phonitale::RuleSet& rules() {
  static const phonitale::RuleSet r = phonitale::RuleSet::load(data("rules.txt"));
  return r;
}

inline const std::set<std::string>& coda() {
  static const std::set<std::string> c =
      phonitale::load_coda_set(data("coda_ko.txt"));
  return c;
}

inline const phonitale::Lexicon& mini_lexicon() {
  static const phonitale::Lexicon lex =
      phonitale::Lexicon::load(data("lexicon_mini.tsv"), ko_inventory());
  return lex;
}

inline phonitale::PhonemeSequence ko(const std::string& ipa) {
  return phonitale::parse_ipa(phonitale::normalize_ipa(ipa), ko_inventory());
}

inline phonitale::PhonemeSequence en(const std::string& ipa) {
  return phonitale::parse_ipa(phonitale::normalize_ipa(ipa), en_inventory());
}

// '.'-separated syllable string -> SyllableSequence over the Korean inventory.
inline phonitale::SyllableSequence ko_syllables(const std::string& dotted) {
  phonitale::SyllableSequence out;
  std::size_t start = 0, pos = 0;
  std::string text = dotted;
  std::vector<std::string> parts;
  while ((pos = text.find('.', start)) != std::string::npos) {
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  parts.push_back(text.substr(start));
  std::size_t flat = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out.syllables.push_back(ko(parts[i]));
    flat += out.syllables.back().size();
    if (i + 1 < parts.size()) out.boundary_indices.push_back(flat);
  }
  return out;
}

inline phonitale::LexiconEntry make_entry(const std::string& surface,
                                          const std::string& ipa,
                                          const std::string& dotted_syllables,
                                          std::uint64_t frequency = 100) {
  phonitale::LexiconEntry e;
  e.surface = surface;
  e.ipa = ko(ipa);
  e.syllables = ko_syllables(dotted_syllables);
  e.frequency = frequency;
  return e;
}

// Deterministic RNG for the property suites.
inline std::mt19937_64 rng(std::uint64_t seed = 0xfeedbeefULL) {
  return std::mt19937_64(seed);
}

}  // namespace testutil
