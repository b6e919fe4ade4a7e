#include "phonitale/stubs.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace phonitale {
namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
  return a;
}

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

std::string find_field(const std::string& prompt, const std::string& label) {
  // Last occurrence: the final [Input] block carries the actual request.
  std::size_t pos = prompt.rfind(label);
  if (pos == std::string::npos) return "";
  std::size_t start = pos + label.size();
  std::size_t end = prompt.find('\n', start);
  if (end == std::string::npos) end = prompt.size();
  std::string value = prompt.substr(start, end - start);
  // trim
  std::size_t a = value.find_first_not_of(" \t\r");
  std::size_t b = value.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return value.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string item = comma == std::string::npos
                           ? s.substr(start)
                           : s.substr(start, comma - start);
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

const char* kFillers[] = {"오늘도",   "결국",    "문득",   "조용히",
                          "갑자기",   "천천히",  "다시",   "몰래"};

}  // namespace

std::vector<std::string> StubGeneratorClient::complete(
    const std::string& prompt, std::size_t n, double /*temperature*/) const {
  std::uint64_t base = mix(seed_, fnv1a(prompt));
  std::vector<std::string> out;
  out.reserve(n);

  if (prompt.find(kMaskMarker) != std::string::npos) {
    // Masked fill-in request: candidates are drawn from the sentence's own
    // space-separated tokens, deterministically per candidate index.
    std::size_t s = prompt.find("문장: ");
    std::string sentence =
        s == std::string::npos ? prompt : prompt.substr(s + std::string("문장: ").size());
    std::istringstream ss(sentence);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok)
      if (tok.find(kMaskMarker) == std::string::npos) tokens.push_back(tok);
    if (tokens.empty()) tokens.push_back("단어");
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(tokens[mix(base, i) % tokens.size()]);
    return out;
  }

  std::string gloss_field = find_field(prompt, "목표 단어 후보:");
  std::string kw_field = find_field(prompt, "키워드 세트:");
  // strip the <> around the gloss candidates
  if (gloss_field.size() >= 2 && gloss_field.front() == '<' &&
      gloss_field.back() == '>')
    gloss_field = gloss_field.substr(1, gloss_field.size() - 2);
  std::vector<std::string> glosses = split_list(gloss_field);
  std::vector<std::string> keywords = split_list(kw_field);
  if (glosses.empty()) glosses.push_back("뜻");

  for (std::size_t i = 0; i < n; ++i) {
    const std::string& gloss = glosses[mix(base, i * 2 + 1) % glosses.size()];
    const char* filler =
        kFillers[mix(base, i) % (sizeof(kFillers) / sizeof(kFillers[0]))];
    std::string story;
    for (const auto& kw : keywords) story += kw + " ";
    story += std::string(filler) + " <" + gloss + "> 생각이 났다.";
    out.push_back(std::string("{\"목표 단어\": \"") + gloss +
                  "\", \"이야기\": \"" + story + "\"}");
  }
  return out;
}

std::vector<double> StubEmbedder::vec(const std::string& token) const {
  std::vector<double> v(kDim, 0.0);
  auto cps = decode_utf8(token);
  // whole-token bucket keeps very short tokens distinguishable
  v[fnv1a(token) % kDim] += 1.0;
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
    std::uint64_t h = mix(cps[i], cps[i + 1]);
    v[h % kDim] += 1.0;
  }
  for (std::size_t i = 0; i + 2 < cps.size(); ++i) {
    std::uint64_t h = mix(mix(cps[i], cps[i + 1]), cps[i + 2]);
    v[h % kDim] += 1.0;
  }
  return v;
}

StubPerplexity StubPerplexity::load(const std::string& bigram_table_path) {
  std::ifstream in(bigram_table_path);
  if (!in) throw ConfigError("cannot open bigram table: " + bigram_table_path);
  StubPerplexity scorer;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    // columns: bigram (2 codepoints), count
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(lineno, "expected: bigram<TAB>count");
    auto cps = decode_utf8(line.substr(0, tab));
    if (cps.size() != 2)
      throw ParseError(lineno, "bigram column must hold exactly 2 codepoints");
    std::uint64_t count = 0;
    try {
      count = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad count");
    }
    scorer.counts_[{cps[0], cps[1]}] += count;
    scorer.total_ += count;
  }
  scorer.vocab_ = scorer.counts_.size() + 1;
  return scorer;
}

double StubPerplexity::ppl(const std::string& text) const {
  auto cps = decode_utf8(text);
  if (cps.size() < 2)
    return static_cast<double>(vocab_) + 1.0;
  double surprisal = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
    auto it = counts_.find({cps[i], cps[i + 1]});
    std::uint64_t c = it == counts_.end() ? 0 : it->second;
    double p = (static_cast<double>(c) + 1.0) /
               (static_cast<double>(total_) + static_cast<double>(vocab_));
    surprisal += -std::log(p);
    ++n;
  }
  return std::exp(surprisal / static_cast<double>(n));
}

}  // namespace phonitale
