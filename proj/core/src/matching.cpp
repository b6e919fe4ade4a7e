#include "phonitale/matching.hpp"

#include <algorithm>

namespace phonitale {
namespace {

bool same_syllable(const PhonemeSequence& a, const PhonemeSequence& b) {
  return a == b;
}

bool syllable_overlap(const Segment& seg, const LexiconEntry& entry) {
  for (const auto& s : seg.syllables)
    for (const auto& t : entry.syllables.syllables)
      if (same_syllable(s, t)) return true;
  return false;
}

bool initial_syllable_match(const Segment& seg, const LexiconEntry& entry) {
  if (seg.syllables.empty() || entry.syllables.syllables.empty()) return false;
  return same_syllable(seg.syllables.front(), entry.syllables.syllables.front());
}

bool substring_inclusion(const Segment& seg, const LexiconEntry& entry) {
  std::string a = seg.render();
  std::string b = render_ipa(entry.ipa);
  return a.find(b) != std::string::npos || b.find(a) != std::string::npos;
}

bool early_phone_match(const Segment& seg, const LexiconEntry& entry,
                       std::size_t count) {
  PhonemeSequence a = seg.flatten();
  const auto& b = entry.ipa;
  if (a.size() < count || b.size() < count) return false;
  for (std::size_t i = 0; i < count; ++i)
    if (a[i].symbol != b[i].symbol) return false;
  return true;
}

// Deterministic tie-break: higher frequency first, then lexicographic surface.
bool entry_precedes(const LexiconEntry& a, const LexiconEntry& b) {
  std::uint64_t fa = a.frequency.value_or(0);
  std::uint64_t fb = b.frequency.value_or(0);
  if (fa != fb) return fa > fb;
  return a.surface < b.surface;
}

}  // namespace

MatchScore score_keyword(const Segment& segment, const LexiconEntry& entry,
                         const StructuralWeights& weights) {
  if (segment.empty()) throw EmptySequenceError();
  MatchScore m;
  m.base_cos = cosine(embed(segment.flatten()), embed(entry.ipa));

  if (syllable_overlap(segment, entry)) {
    m.syllable_overlap = true;
    if (initial_syllable_match(segment, entry)) {
      m.initial_match = true;
      m.adjustment = weights.lambda_syll * weights.lambda_first;
    } else {
      m.adjustment = weights.lambda_syll;
    }
  } else if (substring_inclusion(segment, entry)) {
    m.substring = true;
    m.adjustment = weights.lambda_substr;
  } else if (early_phone_match(segment, entry, weights.early_phone_count)) {
    m.early_phone = true;
    m.adjustment = weights.lambda_early;
  }
  m.total = m.base_cos + m.adjustment;
  m.low_confidence = m.total < weights.score_floor;
  return m;
}

std::pair<LexiconEntry, MatchScore> best_keyword(
    const Segment& segment, const Lexicon& lexicon,
    const StructuralWeights& weights) {
  if (lexicon.empty()) throw EmptyLexiconError();
  const LexiconEntry* best = nullptr;
  MatchScore best_score;
  for (const auto& entry : lexicon.entries()) {
    MatchScore s = score_keyword(segment, entry, weights);
    if (!best || s.total > best_score.total ||
        (s.total == best_score.total && entry_precedes(entry, *best))) {
      best = &entry;
      best_score = s;
    }
  }
  return {*best, best_score};
}

double score_segmentation(const Segmentation& seg,
                          const SyllableSequence& sylls, const Lexicon& lexicon,
                          const StructuralWeights& weights) {
  if (lexicon.empty()) throw EmptyLexiconError();
  auto segments = seg.segments(sylls);
  double sum = 0.0;
  for (const auto& s : segments) sum += best_keyword(s, lexicon, weights).second.total;
  return sum / static_cast<double>(segments.size());
}

KeywordSequence retrieve_sequence(const PhonemeSequence& l2_ipa,
                                  const Lexicon& lexicon, const RuleSet& rules,
                                  const PhonemeInventory& l1_inventory,
                                  const std::set<std::string>& coda_set,
                                  const StructuralWeights& weights,
                                  std::size_t max_k) {
  PhonemeSequence adapted = adapt(l2_ipa, rules, l1_inventory);
  SyllableSequence sylls = syllabify(adapted, coda_set);
  auto partitions = enumerate_partitions(sylls, max_k);

  const Segmentation* best = nullptr;
  double best_score = 0.0;
  for (const auto& part : partitions) {
    double s = score_segmentation(part, sylls, lexicon, weights);
    // Ties: fewer segments, then earlier boundary vector. The enumeration is
    // already ordered that way, so strict improvement is the only trigger.
    if (!best || s > best_score) {
      best = &part;
      best_score = s;
    }
  }

  KeywordSequence result;
  result.segmentation = *best;
  result.segments = best->segments(sylls);
  double sum = 0.0;
  for (const auto& seg : result.segments) {
    auto [entry, score] = best_keyword(seg, lexicon, weights);
    sum += score.total;
    result.keywords.emplace_back(std::move(entry), score);
  }
  result.seq_score = sum / static_cast<double>(result.keywords.size());
  return result;
}

}  // namespace phonitale
