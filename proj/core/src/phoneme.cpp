#include "phonitale/phoneme.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace phonitale {
namespace {

// Codepoints that attach to a base segment rather than starting a new one.
bool is_modifier_codepoint(char32_t cp) {
  switch (cp) {
    case 0x02B0:  // ʰ aspiration
    case 0x0361:  // ͡ tie bar
    case 0x02B7:  // ʷ
    case 0x02B2:  // ʲ
    case 0x031A:  // ̚ no audible release
    case U'*':    // fortis marker used by the bundled Korean table
      return true;
    default:
      return false;
  }
}

std::u32string decode_utf8(const std::string& s) {
  std::u32string out;
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

std::size_t base_segment_count(const std::string& symbol) {
  std::u32string cps = decode_utf8(symbol);
  std::size_t bases = 0;
  std::size_t ties = 0;
  for (char32_t cp : cps) {
    if (cp == 0x0361)
      ++ties;
    else if (!is_modifier_codepoint(cp))
      ++bases;
  }
  return bases > ties ? bases - ties : 0;
}

int8_t parse_ternary(char c, std::size_t line) {
  switch (c) {
    case '+':
      return 1;
    case '-':
      return -1;
    case '0':
      return 0;
    default:
      throw ParseError(line, std::string("bad feature value '") + c + "'");
  }
}

}  // namespace

std::string to_string(LanguageTag tag) {
  return tag == LanguageTag::L1_KO ? "L1_KO" : "L2_EN";
}

PhonemeInventory::PhonemeInventory(LanguageTag tag,
                                   std::vector<Phoneme> phonemes)
    : tag_(tag) {
  for (auto& p : phonemes) {
    if (p.symbol.empty())
      throw Error("phoneme with empty symbol");
    if (base_segment_count(p.symbol) != 1)
      throw Error("symbol does not contain exactly one base segment: '" +
                  p.symbol + "'");
    if (p.is_vowel != (p.features[0] == 1))
      throw Error("vowel flag inconsistent with syllabic feature: '" +
                  p.symbol + "'");
    if (by_symbol_.count(p.symbol))
      throw Error("duplicate inventory symbol: '" + p.symbol + "'");
    max_symbol_bytes_ = std::max(max_symbol_bytes_, p.symbol.size());
    by_symbol_.emplace(p.symbol, std::move(p));
  }
}

PhonemeInventory PhonemeInventory::load(LanguageTag tag,
                                        const std::string& feature_table_path,
                                        const std::string& inventory_path) {
  std::ifstream ft(feature_table_path);
  if (!ft) throw ConfigError("cannot open feature table: " + feature_table_path);

  std::map<std::string, std::array<int8_t, kFeatureDim>> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ft, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string symbol;
    ss >> symbol;
    std::array<int8_t, kFeatureDim> feats{};
    for (std::size_t i = 0; i < kFeatureDim; ++i) {
      std::string tok;
      if (!(ss >> tok) || tok.size() != 1)
        throw ParseError(lineno, "expected 22 feature values for '" + symbol + "'");
      feats[i] = parse_ternary(tok[0], lineno);
    }
    std::string extra;
    if (ss >> extra)
      throw ParseError(lineno, "trailing tokens after 22 features");
    if (!table.emplace(symbol, feats).second)
      throw ParseError(lineno, "duplicate feature row for '" + symbol + "'");
  }

  std::ifstream inv(inventory_path);
  if (!inv) throw ConfigError("cannot open inventory: " + inventory_path);
  std::vector<Phoneme> phonemes;
  lineno = 0;
  while (std::getline(inv, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string symbol, vflag;
    if (!(ss >> symbol >> vflag))
      throw ParseError(lineno, "expected: symbol vowel_flag");
    auto it = table.find(symbol);
    if (it == table.end()) throw InventoryError(lineno, symbol);
    Phoneme p;
    p.symbol = symbol;
    p.features = it->second;
    p.is_vowel = (vflag == "V" || vflag == "v" || vflag == "1");
    phonemes.push_back(std::move(p));
  }
  return PhonemeInventory(tag, std::move(phonemes));
}

bool PhonemeInventory::contains(const std::string& symbol) const {
  return by_symbol_.count(symbol) > 0;
}

const Phoneme& PhonemeInventory::at(const std::string& symbol) const {
  auto it = by_symbol_.find(symbol);
  if (it == by_symbol_.end())
    throw Error("symbol not in inventory: '" + symbol + "'");
  return it->second;
}

const Phoneme* PhonemeInventory::find(const std::string& symbol) const {
  auto it = by_symbol_.find(symbol);
  return it == by_symbol_.end() ? nullptr : &it->second;
}

std::string normalize_ipa(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    // Stress marks ˈ (U+02C8), ˌ (U+02CC) and length ː (U+02D0) are dropped;
    // ascii g maps to ɡ (U+0261).
    if (i + 1 < text.size() && static_cast<unsigned char>(text[i]) == 0xCB) {
      unsigned char c2 = static_cast<unsigned char>(text[i + 1]);
      if (c2 == 0x88 || c2 == 0x8C || c2 == 0x90) {
        i += 2;
        continue;
      }
    }
    if (text[i] == 'g') {
      out += "\xC9\xA1";  // ɡ
      ++i;
      continue;
    }
    out += text[i];
    ++i;
  }
  return out;
}

PhonemeSequence parse_ipa(const std::string& text,
                          const PhonemeInventory& inventory) {
  if (inventory.size() == 0) throw Error("empty inventory");
  std::vector<Phoneme> out;
  std::size_t pos = 0;
  const std::size_t max_len = inventory.max_symbol_bytes();
  while (pos < text.size()) {
    std::size_t take = std::min(max_len, text.size() - pos);
    const Phoneme* match = nullptr;
    std::size_t match_len = 0;
    for (std::size_t len = take; len >= 1; --len) {
      if (const Phoneme* p = inventory.find(text.substr(pos, len))) {
        match = p;
        match_len = len;
        break;
      }
    }
    if (!match) {
      // Report the whole next codepoint, not a partial byte.
      std::size_t end = pos + 1;
      while (end < text.size() &&
             (static_cast<unsigned char>(text[end]) & 0xC0) == 0x80)
        ++end;
      throw UnknownSymbolError(pos, text.substr(pos, end - pos));
    }
    out.push_back(*match);
    pos += match_len;
  }
  return PhonemeSequence(std::move(out), inventory.language_tag());
}

std::string render_ipa(const PhonemeSequence& seq) {
  std::string out;
  for (const auto& p : seq.phonemes()) out += p.symbol;
  return out;
}

FeatureEmbedding embed(const PhonemeSequence& seq) {
  if (seq.empty()) throw EmptySequenceError();
  FeatureEmbedding e;
  for (const auto& p : seq.phonemes())
    for (std::size_t i = 0; i < kFeatureDim; ++i) e.values[i] += p.features[i];
  for (auto& v : e.values) v /= static_cast<double>(seq.size());
  return e;
}

double cosine(const FeatureEmbedding& a, const FeatureEmbedding& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < kFeatureDim; ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) throw ZeroNormError();
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return c;
}

}  // namespace phonitale
