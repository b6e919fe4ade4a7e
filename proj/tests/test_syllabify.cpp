#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

using namespace phonitale;

namespace {

std::vector<std::string> rendered(const SyllableSequence& s) {
  std::vector<std::string> out;
  for (const auto& syl : s.syllables) out.push_back(render_ipa(syl));
  return out;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("Fig. 2 fixture: otʰapsi -> [o, tʰap, si]") {
  auto s = syllabify(testutil::ko("otʰapsi"), testutil::coda());
  CHECK(rendered(s) == std::vector<std::string>{"o", "tʰap", "si"});  // [PAPER]
  CHECK(s.boundary_indices == std::vector<std::size_t>{1, 4});
}

TEST_CASE("onset maximization and glide attachment") {
  CHECK(rendered(syllabify(testutil::ko("sɯkʰwantʌ"), testutil::coda())) ==
        std::vector<std::string>{"sɯ", "kʰwan", "tʌ"});  // [PAPER]
  // Glides belong to the following nucleus.
  CHECK(rendered(syllabify(testutil::ko("winto"), testutil::coda())) ==
        std::vector<std::string>{"win", "to"});
  CHECK(rendered(syllabify(testutil::ko("jɛlo"), testutil::coda())) ==
        std::vector<std::string>{"jɛ", "lo"});
  // VCV: the consonant is an onset, not a coda (onset maximization).
  CHECK(rendered(syllabify(testutil::ko("oli"), testutil::coda())) ==
        std::vector<std::string>{"o", "li"});
}

TEST_CASE("syllabification errors") {
  CHECK_THROWS_AS(syllabify(testutil::ko("m"), testutil::coda()),
                  NoNucleusError);
  CHECK_THROWS_AS(syllabify(PhonemeSequence{}, testutil::coda()),
                  EmptySequenceError);
  // pʰ is not a legal coda and has no following nucleus to attach to.
  CHECK_THROWS_AS(syllabify(testutil::ko("apʰ"), testutil::coda()),
                  IllegalClusterError);
  // Three consonants between nuclei cannot fit CV(C).C V.
  CHECK_THROWS_AS(syllabify(testutil::ko("amptka"), testutil::coda()),
                  IllegalClusterError);
}

TEST_CASE("flatten round-trips the phoneme stream") {
  auto seq = testutil::ko("sɯkʰwantʌ");
  auto s = syllabify(seq, testutil::coda());
  CHECK(s.flatten() == seq);
}

TEST_CASE("boundary F1 basics") {
  auto a = testutil::ko_syllables("o.tʰap.si");
  auto [p1, r1, f1] = boundary_f1(a, a);
  CHECK(p1 == 1.0);
  CHECK(r1 == 1.0);
  CHECK(f1 == 1.0);

  // [DERIVED] pred {1,4} vs gold {1,3}: P = 1/2, R = 1/2, F1 = 1/2.
  SyllableSequence pred = a;
  SyllableSequence gold = a;
  gold.boundary_indices = {1, 3};
  auto [p2, r2, f2] = boundary_f1(pred, gold);
  CHECK(p2 == doctest::Approx(0.5));
  CHECK(r2 == doctest::Approx(0.5));
  CHECK(f2 == doctest::Approx(0.5));

  // Monosyllables have no internal boundaries: vacuously perfect.
  auto mono = testutil::ko_syllables("pap");
  auto [p3, r3, f3] = boundary_f1(mono, mono);
  CHECK(f3 == 1.0);

  // Empty prediction against a non-empty gold scores zero.
  SyllableSequence none = a;
  none.boundary_indices = {};
  auto [p4, r4, f4] = boundary_f1(none, gold);
  CHECK(f4 == 0.0);
}

TEST_CASE("20-word gold set: boundary F1 == 1.00") {  // [PRIMARY support]
  auto pairs = load_parallel_corpus(testutil::test_data("gold_syllables.tsv"),
                                    testutil::en_inventory(),
                                    testutil::ko_inventory());
  REQUIRE(pairs.size() == 20);
  double f1_sum = 0.0;
  for (const auto& p : pairs) {
    REQUIRE(p.gold_syllables.has_value());
    // The transducer output equals the annotated string...
    PhonemeSequence hyp =
        adapt(p.l2_ipa, testutil::rules(), testutil::ko_inventory());
    CHECK(render_ipa(hyp) == render_ipa(p.gold_l1_ipa));
    // ...and its syllabification reproduces the hand annotation.
    SyllableSequence pred = syllabify(hyp, testutil::coda());
    SyllableSequence gold;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < p.gold_syllables->size(); ++i) {
      gold.syllables.push_back(testutil::ko((*p.gold_syllables)[i]));
      pos += gold.syllables.back().size();
      if (i + 1 < p.gold_syllables->size()) gold.boundary_indices.push_back(pos);
    }
    auto [prec, rec, f1] = boundary_f1(pred, gold);
    CHECK(f1 == 1.0);
    f1_sum += f1;
  }
  CHECK(f1_sum / 20.0 == 1.0);
}

TEST_CASE("partition enumeration: order and contents for l=3, max_k=2") {
  auto s = testutil::ko_syllables("sɯ.kʰwan.tʌ");
  auto parts = enumerate_partitions(s, 2);
  // [DERIVED] k=1 first, then k=2 by boundary position.
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].boundaries == std::vector<std::size_t>{0, 3});
  CHECK(parts[1].boundaries == std::vector<std::size_t>{0, 1, 3});
  CHECK(parts[2].boundaries == std::vector<std::size_t>{0, 2, 3});

  auto segs = parts[2].segments(s);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].render() == "sɯkʰwan");
  CHECK(segs[1].render() == "tʌ");
}

TEST_CASE("property: partition counts and validity over 1000 cases") {
  auto gen = testutil::rng(4);
  std::uniform_int_distribution<std::size_t> lens(1, 8);
  std::uniform_int_distribution<std::size_t> ks(1, 4);
  const std::vector<std::string> nuclei = {"pa", "ki", "so", "mu", "nɛ",
                                           "tʌ", "li", "ham"};

  for (int iter = 0; iter < 1000; ++iter) {
    std::size_t l = lens(gen);
    std::size_t max_k = ks(gen);
    SyllableSequence s;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < l; ++i) {
      s.syllables.push_back(testutil::ko(nuclei[gen() % nuclei.size()]));
      pos += s.syllables.back().size();
      if (i + 1 < l) s.boundary_indices.push_back(pos);
    }
    auto parts = enumerate_partitions(s, max_k);

    // [DERIVED] count = sum over k of C(l-1, k-1)
    std::uint64_t expected = 0;
    for (std::size_t k = 1; k <= std::min(max_k, l); ++k)
      expected += choose(l - 1, k - 1);
    CHECK(parts.size() == expected);

    std::size_t prev_k = 0;
    std::vector<std::size_t> prev_bounds;
    for (const auto& part : parts) {
      // boundary vectors are strictly increasing 0..l
      REQUIRE(part.boundaries.front() == 0);
      REQUIRE(part.boundaries.back() == l);
      for (std::size_t i = 1; i < part.boundaries.size(); ++i)
        REQUIRE(part.boundaries[i] > part.boundaries[i - 1]);
      CHECK(part.k() <= max_k);
      // ordering: k ascending, then lexicographic
      if (part.k() == prev_k) CHECK(prev_bounds < part.boundaries);
      else CHECK(part.k() > prev_k);
      prev_k = part.k();
      prev_bounds = part.boundaries;
      // segments reassemble the sequence
      auto segs = part.segments(s);
      std::string flat;
      for (const auto& seg : segs) flat += seg.render();
      CHECK(flat == render_ipa(s.flatten()));
    }
  }
}
