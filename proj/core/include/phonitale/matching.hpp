#pragma once

#include <utility>
#include <vector>

#include "phonitale/lexicon.hpp"
#include "phonitale/syllable.hpp"
#include "phonitale/translit.hpp"

namespace phonitale {

struct StructuralWeights {
  double lambda_syll = 0.9;
  double lambda_first = 2.0;
  double lambda_substr = 0.3;
  double lambda_early = 0.2;
  // Predicate length for the early-phone match.
  std::size_t early_phone_count = 2;
  // Below this total the segment's match is flagged low-confidence.
  double score_floor = 0.3;
};

struct MatchScore {
  double base_cos = 0.0;
  double adjustment = 0.0;
  double total = 0.0;
  bool syllable_overlap = false;
  bool initial_match = false;
  bool substring = false;
  bool early_phone = false;
  bool low_confidence = false;
};

struct KeywordSequence {
  std::vector<std::pair<LexiconEntry, MatchScore>> keywords;
  Segmentation segmentation;
  std::vector<Segment> segments;
  double seq_score = 0.0;
};

// Base cosine plus the mutually exclusive structural adjustment branches.
MatchScore score_keyword(const Segment& segment, const LexiconEntry& entry,
                         const StructuralWeights& weights);

// Argmax over the lexicon; ties broken by higher frequency, then
// lexicographic surface.
std::pair<LexiconEntry, MatchScore> best_keyword(
    const Segment& segment, const Lexicon& lexicon,
    const StructuralWeights& weights);

// Mean over segments of the per-segment best total.
double score_segmentation(const Segmentation& seg,
                          const SyllableSequence& sylls, const Lexicon& lexicon,
                          const StructuralWeights& weights);

// End-to-end: adapt -> syllabify -> enumerate partitions -> best segmentation
// (ties: fewer segments, then earlier boundary) -> per-segment best keywords.
KeywordSequence retrieve_sequence(const PhonemeSequence& l2_ipa,
                                  const Lexicon& lexicon, const RuleSet& rules,
                                  const PhonemeInventory& l1_inventory,
                                  const std::set<std::string>& coda_set,
                                  const StructuralWeights& weights,
                                  std::size_t max_k = 2);

}  // namespace phonitale
