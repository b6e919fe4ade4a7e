#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "phonitale/phoneme.hpp"

namespace phonitale {

struct SyllableSequence {
  std::vector<PhonemeSequence> syllables;
  // Internal split positions in the flat phoneme stream (excludes 0 and end).
  std::vector<std::size_t> boundary_indices;

  std::size_t size() const { return syllables.size(); }
  PhonemeSequence flatten() const;
  std::string render() const;
};

// Legal coda symbols, one per line; comments with '#'.
std::set<std::string> load_coda_set(const std::string& path);

// Deterministic onset-maximization syllabification against the Korean CV(C)
// template. Glides attach to the following nucleus.
SyllableSequence syllabify(const PhonemeSequence& seq,
                           const std::set<std::string>& coda_set);

// Contiguous run of whole syllables matched against one keyword.
struct Segment {
  std::vector<PhonemeSequence> syllables;

  PhonemeSequence flatten() const;
  std::string render() const;
  bool empty() const { return syllables.empty(); }
};

struct Segmentation {
  // 0 = b_0 < b_1 < ... < b_k = l over syllable indices.
  std::vector<std::size_t> boundaries;

  std::size_t k() const { return boundaries.size() - 1; }
  std::vector<Segment> segments(const SyllableSequence& sylls) const;
};

// All segmentations with 1 <= k <= min(max_k, l), ordered by k ascending then
// boundary vector lexicographic.
std::vector<Segmentation> enumerate_partitions(const SyllableSequence& sylls,
                                               std::size_t max_k = 2);

// (precision, recall, f1) over internal boundary positions.
std::tuple<double, double, double> boundary_f1(const SyllableSequence& pred,
                                               const SyllableSequence& gold);

}  // namespace phonitale
