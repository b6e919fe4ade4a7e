#include "phonitale/metrics.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

namespace phonitale {
namespace {

std::vector<char32_t> decode_utf8(const std::string& s) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      len = 2;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      len = 3;
    } else {
      cp = c & 0x07;
      len = 4;
    }
    for (std::size_t k = 1; k < len && i + k < s.size(); ++k)
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

bool is_hangul(char32_t cp) { return cp >= 0xAC00 && cp <= 0xD7A3; }

// Characters that common postpositional particles are written with. A
// keyword followed only by these inside a token still counts as present.
const std::set<char32_t> kParticleChars = [] {
  std::set<char32_t> s;
  for (const char32_t* p = U"은는이가을를에의로으서와과도만께부터까지라랑한테요"; *p; ++p)
    s.insert(*p);
  return s;
}();

std::vector<std::vector<char32_t>> hangul_tokens(const std::string& text) {
  std::vector<std::vector<char32_t>> tokens;
  std::vector<char32_t> cur;
  for (char32_t cp : decode_utf8(text)) {
    if (is_hangul(cp)) {
      cur.push_back(cp);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

}  // namespace

KeywordPresence classify_keyword(const std::string& keyword_surface,
                                 const std::string& cue_text) {
  std::vector<char32_t> kw = decode_utf8(keyword_surface);
  if (kw.empty()) return KeywordPresence::OMITTED;
  auto tokens = hangul_tokens(cue_text);

  for (const auto& tok : tokens) {
    if (tok.size() < kw.size()) continue;
    if (!std::equal(kw.begin(), kw.end(), tok.begin())) continue;
    bool tail_particles = true;
    for (std::size_t i = kw.size(); i < tok.size(); ++i)
      if (!kParticleChars.count(tok[i])) {
        tail_particles = false;
        break;
      }
    if (tail_particles) return KeywordPresence::PRESENT;
  }

  for (const auto& tok : tokens) {
    if (tok.empty() || tok[0] != kw[0]) continue;
    std::size_t common = 0;
    while (common < kw.size() && common < tok.size() &&
           kw[common] == tok[common])
      ++common;
    if (common * 2 >= kw.size()) return KeywordPresence::MODIFIED;
  }
  return KeywordPresence::OMITTED;
}

double phonetic_similarity(const std::vector<LexiconEntry>& keywords,
                           const PhonemeSequence& adapted_ipa) {
  if (keywords.empty()) throw EmptyListError("no proposed keywords");
  std::vector<Phoneme> concat;
  for (const auto& kw : keywords)
    for (const auto& p : kw.ipa.phonemes()) concat.push_back(p);
  PhonemeSequence joined(std::move(concat), adapted_ipa.language_tag());
  return cosine(embed(joined), embed(adapted_ipa));
}

double omission_rate(const std::vector<std::string>& proposed_surfaces,
                     const VerbalCue& cue) {
  if (proposed_surfaces.empty()) throw EmptyListError("no proposed keywords");
  std::size_t omitted = 0;
  for (const auto& kw : proposed_surfaces)
    if (classify_keyword(kw, cue.text) == KeywordPresence::OMITTED) ++omitted;
  return static_cast<double>(omitted) /
         static_cast<double>(proposed_surfaces.size());
}

double modification_rate(const std::vector<std::string>& proposed_surfaces,
                         const VerbalCue& cue) {
  if (proposed_surfaces.empty()) throw EmptyListError("no proposed keywords");
  std::size_t modified = 0;
  for (const auto& kw : proposed_surfaces)
    if (classify_keyword(kw, cue.text) == KeywordPresence::MODIFIED) ++modified;
  return static_cast<double>(modified) /
         static_cast<double>(proposed_surfaces.size());
}

EvalReport build_report(const std::vector<EvalItem>& items) {
  if (items.empty()) throw EmptyListError("no evaluation items");
  EvalReport r;
  r.n_items = items.size();

  double phon_sum = 0.0;
  std::size_t omitted = 0, modified = 0, proposed = 0;
  double cc_sum = 0.0, ppl_sum = 0.0;

  for (const auto& item : items) {
    phon_sum += phonetic_similarity(item.proposed_keywords, item.adapted_ipa);
    for (const auto& kw : item.proposed_keywords) {
      ++proposed;
      switch (classify_keyword(kw.surface, item.cue.text)) {
        case KeywordPresence::OMITTED: ++omitted; break;
        case KeywordPresence::MODIFIED: ++modified; break;
        default: break;
      }
    }
    if (item.cc) {
      cc_sum += *item.cc;
      ++r.n_context;
    }
    if (item.ppl) {
      ppl_sum += *item.ppl;
      ++r.n_perplexity;
    }
  }
  r.phonetic = phon_sum / static_cast<double>(items.size());
  r.omission_rate = static_cast<double>(omitted) / static_cast<double>(proposed);
  r.modification_rate =
      static_cast<double>(modified) / static_cast<double>(proposed);
  r.context = r.n_context ? cc_sum / static_cast<double>(r.n_context) : 0.0;
  r.perplexity =
      r.n_perplexity ? ppl_sum / static_cast<double>(r.n_perplexity) : 0.0;
  return r;
}

std::string report_to_json(const EvalReport& r) {
  nlohmann::json j = {{"phonetic", r.phonetic},
                      {"omission_rate", r.omission_rate},
                      {"modification_rate", r.modification_rate},
                      {"context", r.context},
                      {"perplexity", r.perplexity},
                      {"n_items", r.n_items},
                      {"n_context", r.n_context},
                      {"n_perplexity", r.n_perplexity},
                      {"pooling", r.pooling}};
  return j.dump();
}

EvalReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EvalReport r;
  r.phonetic = j.at("phonetic").get<double>();
  r.omission_rate = j.at("omission_rate").get<double>();
  r.modification_rate = j.at("modification_rate").get<double>();
  r.context = j.at("context").get<double>();
  r.perplexity = j.at("perplexity").get<double>();
  r.n_items = j.at("n_items").get<std::size_t>();
  r.n_context = j.at("n_context").get<std::size_t>();
  r.n_perplexity = j.at("n_perplexity").get<std::size_t>();
  r.pooling = j.at("pooling").get<std::string>();
  return r;
}

std::string report_to_table(const EvalReport& r) {
  std::ostringstream out;
  out << "metric              value\n";
  out << "------------------  ----------\n";
  char buf[64];
  auto row = [&](const char* name, double v) {
    std::snprintf(buf, sizeof(buf), "%-18s  %10.4f\n", name, v);
    out << buf;
  };
  row("phonetic", r.phonetic);
  row("omission_rate", r.omission_rate);
  row("modification_rate", r.modification_rate);
  row("context", r.context);
  row("perplexity", r.perplexity);
  out << "items: " << r.n_items << " (context over " << r.n_context
      << ", perplexity over " << r.n_perplexity << "; " << r.pooling
      << " pooling)\n";
  return out.str();
}

}  // namespace phonitale
