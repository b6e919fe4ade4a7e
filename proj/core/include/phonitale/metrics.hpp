#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phonitale/cue.hpp"
#include "phonitale/lexicon.hpp"

namespace phonitale {

enum class KeywordPresence { PRESENT, MODIFIED, OMITTED };

// Classification over Hangul surfaces: PRESENT allows attached trailing
// particle characters; MODIFIED requires a cue token sharing the keyword's
// first syllable block and at least half of its blocks as a prefix.
KeywordPresence classify_keyword(const std::string& keyword_surface,
                                 const std::string& cue_text);

struct EvalItem {
  VocabEntry target;
  PhonemeSequence adapted_ipa;
  std::vector<LexiconEntry> proposed_keywords;
  VerbalCue cue;
  std::optional<double> ppl;
  std::optional<double> cc;
};

struct EvalReport {
  double phonetic = 0.0;
  double omission_rate = 0.0;
  double modification_rate = 0.0;
  double context = 0.0;
  double perplexity = 0.0;
  std::size_t n_items = 0;
  std::size_t n_context = 0;     // items contributing to the context mean
  std::size_t n_perplexity = 0;  // items contributing to the perplexity mean
  // Omission/modification pool keyword counts globally across items.
  std::string pooling = "global-count";
};

// Cosine of mean-pooled feature embeddings between the concatenated keyword
// IPA and the adapted target IPA.
double phonetic_similarity(const std::vector<LexiconEntry>& keywords,
                           const PhonemeSequence& adapted_ipa);

double omission_rate(const std::vector<std::string>& proposed_surfaces,
                     const VerbalCue& cue);

double modification_rate(const std::vector<std::string>& proposed_surfaces,
                         const VerbalCue& cue);

EvalReport build_report(const std::vector<EvalItem>& items);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

// Aligned plain-text rendering of the report.
std::string report_to_table(const EvalReport& report);

}  // namespace phonitale
