// Microbenchmarks for the hot paths: tokenization, adaptation,
// syllabification, and keyword retrieval over the bundled mini-lexicon.
#include <benchmark/benchmark.h>

#include "phonitale/matching.hpp"
#include "phonitale/translit.hpp"

using namespace phonitale;

namespace {

std::string data(const std::string& name) {
  return std::string(PHONITALE_DATA_DIR) + "/" + name;
}

const PhonemeInventory& en_inv() {
  static const auto inv = PhonemeInventory::load(
      LanguageTag::L2_EN, data("features.tsv"), data("inventory_en.tsv"));
  return inv;
}

const PhonemeInventory& ko_inv() {
  static const auto inv = PhonemeInventory::load(
      LanguageTag::L1_KO, data("features.tsv"), data("inventory_ko.tsv"));
  return inv;
}

const RuleSet& rules() {
  static const auto r = RuleSet::load(data("rules.txt"));
  return r;
}

const std::set<std::string>& coda() {
  static const auto c = load_coda_set(data("coda_ko.txt"));
  return c;
}

const Lexicon& lexicon() {
  static const auto l = Lexicon::load(data("lexicon_mini.tsv"), ko_inv());
  return l;
}

}  // namespace

static void BM_ParseIpa(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_ipa("skwandər", en_inv()));
}
BENCHMARK(BM_ParseIpa);

static void BM_Adapt(benchmark::State& state) {
  auto seq = parse_ipa("skwandər", en_inv());
  for (auto _ : state)
    benchmark::DoNotOptimize(adapt(seq, rules(), ko_inv()));
}
BENCHMARK(BM_Adapt);

static void BM_Syllabify(benchmark::State& state) {
  auto seq = parse_ipa("sɯkʰwantʌ", ko_inv());
  for (auto _ : state) benchmark::DoNotOptimize(syllabify(seq, coda()));
}
BENCHMARK(BM_Syllabify);

static void BM_ScoreKeyword(benchmark::State& state) {
  StructuralWeights w;
  auto sylls = syllabify(parse_ipa("sɯkʰwantʌ", ko_inv()), coda());
  Segment seg;
  seg.syllables = {sylls.syllables[0], sylls.syllables[1]};
  const auto& entry = lexicon().entries().front();
  for (auto _ : state)
    benchmark::DoNotOptimize(score_keyword(seg, entry, w));
}
BENCHMARK(BM_ScoreKeyword);

static void BM_RetrieveSequence(benchmark::State& state) {
  StructuralWeights w;
  auto seq = parse_ipa("skwandər", en_inv());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        retrieve_sequence(seq, lexicon(), rules(), ko_inv(), coda(), w, 2));
}
BENCHMARK(BM_RetrieveSequence);

BENCHMARK_MAIN();
