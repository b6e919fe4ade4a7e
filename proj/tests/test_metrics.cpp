#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "phonitale/metrics.hpp"

using namespace phonitale;

namespace {

VerbalCue cue_with(const std::string& text) {
  VerbalCue cue;
  cue.text = text;
  std::size_t open = text.find('<');
  std::size_t close = text.find('>');
  if (open != std::string::npos && close != std::string::npos)
    cue.target_span = {open, close + 1};
  return cue;
}

}  // namespace

TEST_CASE("keyword presence classification") {
  // exact token
  CHECK(classify_keyword("세관", "세관 더 <낭비하다> 생각.") ==
        KeywordPresence::PRESENT);
  // attached particle tail still counts as present
  CHECK(classify_keyword("세관", "그는 세관에서 짐을 풀었다.") ==
        KeywordPresence::PRESENT);
  CHECK(classify_keyword("티", "티를 마셨다.") == KeywordPresence::PRESENT);
  // altered form sharing the first block
  CHECK(classify_keyword("레", "레스토랑에서 먹었다.") ==
        KeywordPresence::MODIFIED);
  // missing entirely
  CHECK(classify_keyword("널", "프로 비서는 서류를 정리했다.") ==
        KeywordPresence::OMITTED);
  // sharing less than half of the blocks is an omission, not a modification
  CHECK(classify_keyword("대물림만세", "대물 잔치가 열렸다.") ==
        KeywordPresence::OMITTED);
}

TEST_CASE("appendix omission example: 1/3 omitted") {  // [PAPER]
  // provisional -> keywords 프로, 비서, 널; the cue drops 널.
  std::vector<std::string> keywords = {"프로", "비서", "널"};
  VerbalCue cue = cue_with("프로 비서는 <임시의> 서류를 정리했다.");
  CHECK(omission_rate(keywords, cue) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(modification_rate(keywords, cue) == 0.0);
}

TEST_CASE("appendix modification example: 1/3 modified") {  // [PAPER]
  // reticent -> keywords 레, 티, 센트; the cue stretches 레 into 레스토랑.
  std::vector<std::string> keywords = {"레", "티", "센트"};
  VerbalCue cue =
      cue_with("레스토랑에서 티를 마시며 센트를 낸 그는 <과묵한> 사람이었다.");
  CHECK(modification_rate(keywords, cue) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(omission_rate(keywords, cue) == 0.0);
}

TEST_CASE("rate functions reject empty keyword lists") {
  VerbalCue cue = cue_with("아무 <이야기>나.");
  CHECK_THROWS_AS(omission_rate({}, cue), EmptyListError);
  CHECK_THROWS_AS(modification_rate({}, cue), EmptyListError);
}

TEST_CASE("phonetic similarity of concatenated keywords") {
  auto adapted = testutil::ko("sɯkʰwantʌ");
  // identical material embeds identically -> cosine 1
  std::vector<LexiconEntry> same = {
      testutil::make_entry("가", "sɯkʰwan", "sɯ.kʰwan"),
      testutil::make_entry("더", "tʌ", "tʌ"),
  };
  CHECK(phonetic_similarity(same, adapted) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<LexiconEntry> kws = {
      testutil::make_entry("세관", "sɛɡwan", "sɛ.ɡwan"),
      testutil::make_entry("더", "tʌ", "tʌ"),
  };
  double sim = phonetic_similarity(kws, adapted);
  CHECK(sim > 0.9);  // near match by construction
  CHECK(sim <= 1.0);
  CHECK_THROWS_AS(phonetic_similarity({}, adapted), EmptyListError);
}

TEST_CASE("report pools keyword counts globally") {
  // [DERIVED] item A: 3 keywords, 1 omitted; item B: 1 keyword, 0 omitted.
  // Global count pooling -> omission 1/4, not mean(1/3, 0) = 1/6.
  EvalItem a;
  a.target = {"provisional", {"임시의"}};
  a.adapted_ipa = testutil::ko("pʰɯlopisʌnʌl");
  a.proposed_keywords = {testutil::make_entry("프로", "pʰɯlo", "pʰɯ.lo"),
                         testutil::make_entry("비서", "pisʌ", "pi.sʌ"),
                         testutil::make_entry("널", "nʌl", "nʌl")};
  a.cue = cue_with("프로 비서는 <임시의> 서류를 정리했다.");
  a.cc = 0.5;
  a.ppl = 12.0;

  EvalItem b;
  b.target = {"more", {"더"}};
  b.adapted_ipa = testutil::ko("tʌ");
  b.proposed_keywords = {testutil::make_entry("더", "tʌ", "tʌ")};
  b.cue = cue_with("더 <많이> 먹었다.");

  EvalReport r = build_report({a, b});
  CHECK(r.n_items == 2);
  CHECK(r.omission_rate == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.modification_rate == 0.0);
  CHECK(r.n_context == 1);
  CHECK(r.n_perplexity == 1);
  CHECK(r.context == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.perplexity == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(r.pooling == "global-count");
  CHECK_THROWS_AS(build_report({}), EmptyListError);
}

TEST_CASE("report serialization round-trips") {
  EvalReport r;
  r.phonetic = 0.925;
  r.omission_rate = 0.25;
  r.modification_rate = 0.125;
  r.context = 0.5;
  r.perplexity = 37.5;
  r.n_items = 8;
  r.n_context = 6;
  r.n_perplexity = 7;
  EvalReport back = report_from_json(report_to_json(r));
  CHECK(back.phonetic == r.phonetic);
  CHECK(back.omission_rate == r.omission_rate);
  CHECK(back.modification_rate == r.modification_rate);
  CHECK(back.context == r.context);
  CHECK(back.perplexity == r.perplexity);
  CHECK(back.n_items == r.n_items);
  CHECK(back.n_context == r.n_context);
  CHECK(back.n_perplexity == r.n_perplexity);
  CHECK(back.pooling == r.pooling);

  std::string table = report_to_table(r);
  CHECK(table.find("omission_rate") != std::string::npos);
  CHECK(table.find("global-count") != std::string::npos);
}

TEST_CASE("property: presence classes partition keywords (1000 cases)") {
  auto gen = testutil::rng(7);
  const std::vector<std::string> pool = {"세관", "더",   "프로", "비서",
                                         "널",   "레",   "티",   "센트",
                                         "오리", "나무", "바다", "커피"};
  const std::vector<std::string> particles = {"", "은", "는", "를", "에서"};

  for (int iter = 0; iter < 1000; ++iter) {
    // random keyword set
    std::size_t nk = 1 + gen() % 4;
    std::vector<std::string> keywords;
    for (std::size_t i = 0; i < nk; ++i)
      keywords.push_back(pool[gen() % pool.size()]);

    // random cue embedding a random subset, sometimes altered
    std::string text;
    for (const auto& kw : keywords) {
      int mode = gen() % 3;
      if (mode == 0) continue;  // omit
      if (mode == 1)
        text += kw + particles[gen() % particles.size()] + " ";
      else
        text += kw + "스토랑 ";  // altered tail
    }
    text += "<뜻> 이야기.";
    VerbalCue cue = cue_with(text);

    double o = omission_rate(keywords, cue);
    double m = modification_rate(keywords, cue);
    double present = 0;
    for (const auto& kw : keywords)
      if (classify_keyword(kw, cue.text) == KeywordPresence::PRESENT)
        present += 1.0;
    // the three classes partition the keyword set: rates sum to 1
    CHECK(o + m + present / double(keywords.size()) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(o >= 0.0);
    CHECK(m >= 0.0);
  }
}
