#include "phonitale/syllable.hpp"

#include <fstream>

namespace phonitale {
namespace {

bool is_glide(const Phoneme& p) {
  // syl -, son +, cons - : approximants that join the nucleus (w, j).
  return !p.is_vowel && p.features[1] == 1 && p.features[2] == -1;
}

}  // namespace

PhonemeSequence SyllableSequence::flatten() const {
  std::vector<Phoneme> all;
  LanguageTag tag = LanguageTag::L1_KO;
  for (const auto& s : syllables) {
    tag = s.language_tag();
    for (const auto& p : s.phonemes()) all.push_back(p);
  }
  return PhonemeSequence(std::move(all), tag);
}

std::string SyllableSequence::render() const {
  std::string out;
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    if (i) out += '.';
    out += render_ipa(syllables[i]);
  }
  return out;
}

std::set<std::string> load_coda_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coda set: " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.insert(line);
  }
  return out;
}

SyllableSequence syllabify(const PhonemeSequence& seq,
                           const std::set<std::string>& coda_set) {
  if (seq.empty()) throw EmptySequenceError();
  const auto& ph = seq.phonemes();
  const std::size_t n = ph.size();

  // Nucleus start positions: a vowel, or a glide immediately followed by a
  // vowel. A glide not followed by a vowel is a stranded consonant.
  std::vector<std::size_t> nucleus_start, nucleus_end;  // [start, end)
  bool any_vowel = false;
  for (std::size_t i = 0; i < n; ++i) any_vowel |= ph[i].is_vowel;
  if (!any_vowel) throw NoNucleusError();

  for (std::size_t i = 0; i < n;) {
    if (ph[i].is_vowel) {
      nucleus_start.push_back(i);
      nucleus_end.push_back(i + 1);
      ++i;
    } else if (is_glide(ph[i]) && i + 1 < n && ph[i + 1].is_vowel) {
      nucleus_start.push_back(i);
      nucleus_end.push_back(i + 2);
      i += 2;
    } else {
      ++i;
    }
  }

  // Syllable boundaries via onset maximization: of the consonants between two
  // nuclei, the last one becomes the onset of the following syllable; at most
  // one more may close the preceding syllable as a legal coda.
  std::vector<std::size_t> syl_start;  // flat index where each syllable begins
  // Leading consonants before the first nucleus: at most one onset.
  if (nucleus_start[0] > 1) throw IllegalClusterError(0);
  syl_start.push_back(0);

  for (std::size_t k = 1; k < nucleus_start.size(); ++k) {
    std::size_t gap_begin = nucleus_end[k - 1];
    std::size_t gap_end = nucleus_start[k];
    std::size_t gap = gap_end - gap_begin;
    if (gap == 0) {
      syl_start.push_back(gap_end);
    } else if (gap == 1) {
      syl_start.push_back(gap_begin);  // single consonant goes rightward
    } else if (gap == 2) {
      if (!coda_set.count(ph[gap_begin].symbol))
        throw IllegalClusterError(gap_begin);
      syl_start.push_back(gap_begin + 1);
    } else {
      throw IllegalClusterError(gap_begin);
    }
  }

  // Trailing consonants after the last nucleus: at most one legal coda.
  std::size_t tail = nucleus_end.back();
  if (n - tail > 1) throw IllegalClusterError(tail);
  if (n - tail == 1 && !coda_set.count(ph[tail].symbol))
    throw IllegalClusterError(tail);
  // A mid-word syllable coda must also be legal.
  // (checked per syllable below)

  SyllableSequence out;
  for (std::size_t s = 0; s < syl_start.size(); ++s) {
    std::size_t begin = syl_start[s];
    std::size_t end = s + 1 < syl_start.size() ? syl_start[s + 1] : n;
    std::vector<Phoneme> syl(ph.begin() + begin, ph.begin() + end);
    out.syllables.emplace_back(std::move(syl), seq.language_tag());
    if (s + 1 < syl_start.size()) out.boundary_indices.push_back(end);
  }
  return out;
}

PhonemeSequence Segment::flatten() const {
  std::vector<Phoneme> all;
  LanguageTag tag = LanguageTag::L1_KO;
  for (const auto& s : syllables) {
    tag = s.language_tag();
    for (const auto& p : s.phonemes()) all.push_back(p);
  }
  return PhonemeSequence(std::move(all), tag);
}

std::string Segment::render() const {
  std::string out;
  for (const auto& s : syllables) out += render_ipa(s);
  return out;
}

std::vector<Segment> Segmentation::segments(
    const SyllableSequence& sylls) const {
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    Segment seg;
    for (std::size_t s = boundaries[i]; s < boundaries[i + 1]; ++s)
      seg.syllables.push_back(sylls.syllables[s]);
    out.push_back(std::move(seg));
  }
  return out;
}

std::vector<Segmentation> enumerate_partitions(const SyllableSequence& sylls,
                                               std::size_t max_k) {
  const std::size_t l = sylls.size();
  if (l == 0) throw EmptySequenceError();
  if (max_k < 1) throw Error("max_k must be >= 1");

  std::vector<Segmentation> out;
  std::size_t top = std::min(max_k, l);
  for (std::size_t k = 1; k <= top; ++k) {
    // Choose k-1 internal boundaries out of positions 1..l-1, lexicographic.
    std::vector<std::size_t> idx(k - 1);
    for (std::size_t i = 0; i < k - 1; ++i) idx[i] = i + 1;
    while (true) {
      Segmentation seg;
      seg.boundaries.push_back(0);
      for (auto b : idx) seg.boundaries.push_back(b);
      seg.boundaries.push_back(l);
      out.push_back(std::move(seg));
      if (k == 1) break;
      // next combination of internal boundaries
      bool advanced = false;
      for (std::size_t t = k - 1; t-- > 0;) {
        if (idx[t] < l - (k - 1) + t) {
          ++idx[t];
          for (std::size_t j = t + 1; j < k - 1; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return out;
}

std::tuple<double, double, double> boundary_f1(const SyllableSequence& pred,
                                               const SyllableSequence& gold) {
  if (!(pred.flatten() == gold.flatten())) throw StreamMismatchError();
  std::set<std::size_t> p(pred.boundary_indices.begin(),
                          pred.boundary_indices.end());
  std::set<std::size_t> g(gold.boundary_indices.begin(),
                          gold.boundary_indices.end());
  if (p.empty() && g.empty()) return {1.0, 1.0, 1.0};
  std::size_t hits = 0;
  for (auto b : p)
    if (g.count(b)) ++hits;
  double precision = p.empty() ? 0.0 : static_cast<double>(hits) / p.size();
  double recall = g.empty() ? 0.0 : static_cast<double>(hits) / g.size();
  double f1 = (precision + recall) > 0
                  ? 2 * precision * recall / (precision + recall)
                  : 0.0;
  return {precision, recall, f1};
}

}  // namespace phonitale
