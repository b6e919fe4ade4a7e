#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

using namespace phonitale;

TEST_CASE("normalize_ipa strips stress and length marks, maps ascii g") {
  // Stress/length marks vanish; vowel quality is left to the rule pass.
  CHECK(normalize_ipa("ˈskwɑːndər") == "skwɑndər");  // [DERIVED] by hand
  CHECK(normalize_ipa("ˌɡɪɡ") == "ɡɪɡ");
  CHECK(normalize_ipa("gɪg") == "ɡɪɡ");
  CHECK(normalize_ipa("") == "");
}

TEST_CASE("greedy longest-match tokenization") {
  // tʰ must win over t in the Korean inventory.
  auto seq = testutil::ko("otʰapsi");
  REQUIRE(seq.size() == 6);
  CHECK(seq[0].symbol == "o");
  CHECK(seq[1].symbol == "tʰ");
  CHECK(seq[2].symbol == "a");
  CHECK(seq[3].symbol == "p");
  CHECK(seq[4].symbol == "s");
  CHECK(seq[5].symbol == "i");

  // Tie-bar affricates parse as one phoneme in the English inventory.
  auto en = testutil::en("t͡ʃænəl");
  REQUIRE(en.size() == 5);
  CHECK(en[0].symbol == "t͡ʃ");
}

TEST_CASE("unknown symbol reports byte position and full codepoint") {
  try {
    testutil::ko("taX");
    FAIL("expected UnknownSymbolError");
  } catch (const UnknownSymbolError& e) {
    std::string msg = e.what();
    CHECK(msg.find("'X'") != std::string::npos);
    CHECK(msg.find("2") != std::string::npos);  // byte offset of X
  }
  // Multibyte fragment is reported whole, not split.
  try {
    testutil::ko("taθ");
    FAIL("expected UnknownSymbolError");
  } catch (const UnknownSymbolError& e) {
    std::string msg = e.what();
    CHECK(msg.find("θ") != std::string::npos);
  }
}

TEST_CASE("vowel flag matches the syllabic feature") {
  const auto& inv = testutil::ko_inventory();
  for (const auto& [sym, p] : inv.phonemes())
    CHECK(p.is_vowel == (p.features[0] == 1));
  CHECK(inv.at("a").is_vowel);
  CHECK_FALSE(inv.at("t").is_vowel);
  CHECK_FALSE(inv.at("w").is_vowel);  // glides are not syllabic
}

TEST_CASE("embed is the element-wise mean") {
  // [DERIVED] single phoneme embeds to its own feature vector.
  auto t = testutil::ko("t");
  auto e = embed(t);
  const auto& feats = testutil::ko_inventory().at("t").features;
  for (std::size_t i = 0; i < kFeatureDim; ++i)
    CHECK(e.values[i] == doctest::Approx(double(feats[i])).epsilon(1e-15));

  // [DERIVED] two-phoneme mean, checked coordinate-wise.
  auto ta = testutil::ko("ta");
  auto e2 = embed(ta);
  const auto& fa = testutil::ko_inventory().at("a").features;
  for (std::size_t i = 0; i < kFeatureDim; ++i)
    CHECK(e2.values[i] ==
          doctest::Approx((double(feats[i]) + double(fa[i])) / 2.0).epsilon(1e-15));

  CHECK_THROWS_AS(embed(PhonemeSequence{}), EmptySequenceError);
}

TEST_CASE("cosine: identity, symmetry, clamping") {
  auto a = embed(testutil::ko("sɛɡwan"));
  auto b = embed(testutil::ko("sɯkʰwan"));
  CHECK(cosine(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine(a, b) == doctest::Approx(cosine(b, a)).epsilon(1e-15));
  CHECK(cosine(a, b) <= 1.0);
  CHECK(cosine(a, b) >= -1.0);

  FeatureEmbedding zero;
  CHECK_THROWS_AS(cosine(zero, a), ZeroNormError);
}

TEST_CASE("property: render/parse round-trip over 1000 random sequences") {
  auto gen = testutil::rng(1);
  const auto& inv = testutil::ko_inventory();
  std::vector<std::string> symbols;
  for (const auto& [sym, p] : inv.phonemes()) symbols.push_back(sym);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::uniform_int_distribution<std::size_t> len(1, 10);

  for (int iter = 0; iter < 1000; ++iter) {
    std::string text;
    std::size_t l = len(gen);
    std::vector<std::string> chosen;
    for (std::size_t i = 0; i < l; ++i) {
      chosen.push_back(symbols[pick(gen)]);
      text += chosen.back();
    }
    auto seq = parse_ipa(text, inv);
    // Greedy longest-match guarantees concatenation identity even when the
    // token boundaries shift (e.g. t + ʰ-initial neighbors).
    CHECK(render_ipa(seq) == text);
    // And re-parsing the render is a fixpoint.
    CHECK(parse_ipa(render_ipa(seq), inv) == seq);
  }
}

TEST_CASE("property: cosine bounds over 1000 random pairs") {
  auto gen = testutil::rng(2);
  const auto& inv = testutil::ko_inventory();
  std::vector<std::string> symbols;
  for (const auto& [sym, p] : inv.phonemes()) symbols.push_back(sym);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::uniform_int_distribution<std::size_t> len(1, 8);

  auto random_seq = [&] {
    std::string text;
    std::size_t l = len(gen);
    for (std::size_t i = 0; i < l; ++i) text += symbols[pick(gen)];
    return parse_ipa(text, inv);
  };
  for (int iter = 0; iter < 1000; ++iter) {
    auto a = embed(random_seq());
    auto b = embed(random_seq());
    double c = cosine(a, b);
    CHECK(c <= 1.0);
    CHECK(c >= -1.0);
    CHECK(cosine(b, a) == doctest::Approx(c).epsilon(1e-15));
  }
}
