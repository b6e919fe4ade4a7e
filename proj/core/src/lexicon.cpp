#include "phonitale/lexicon.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace phonitale {

PartOfSpeech parse_pos(const std::string& tag) {
  if (tag == "NOUN") return PartOfSpeech::NOUN;
  if (tag == "VERB") return PartOfSpeech::VERB;
  if (tag == "ADJ") return PartOfSpeech::ADJ;
  if (tag == "ADV") return PartOfSpeech::ADV;
  return PartOfSpeech::OTHER;
}

std::string to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::NOUN: return "NOUN";
    case PartOfSpeech::VERB: return "VERB";
    case PartOfSpeech::ADJ: return "ADJ";
    case PartOfSpeech::ADV: return "ADV";
    default: return "OTHER";
  }
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries)
    : entries_(std::move(entries)) {
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.surface.empty()) throw Error("lexicon entry with empty surface");
    if (!(e.syllables.flatten() == e.ipa))
      throw Error("syllables do not flatten to IPA for '" + e.surface + "'");
    if (!seen.emplace(e.surface, render_ipa(e.ipa)).second)
      throw Error("duplicate lexicon entry '" + e.surface + "'");
    if (!e.syllables.syllables.empty())
      index_[render_ipa(e.syllables.syllables.front())].push_back(i);
  }
}

Lexicon Lexicon::load(const std::string& path,
                      const PhonemeInventory& l1_inventory) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon: " + path);

  std::vector<LexiconEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() < 4)
      throw ParseError(lineno, "expected at least 4 tab-separated columns");

    LexiconEntry e;
    e.surface = cols[0];
    if (e.surface.empty()) throw ParseError(lineno, "empty surface");
    try {
      e.ipa = parse_ipa(normalize_ipa(cols[1]), l1_inventory);
    } catch (const UnknownSymbolError& ex) {
      throw InventoryError(lineno, ex.fragment());
    }
    std::stringstream ss(cols[2]);
    std::string syl;
    std::string flat;
    while (std::getline(ss, syl, '.')) {
      if (syl.empty()) continue;
      try {
        e.syllables.syllables.push_back(
            parse_ipa(normalize_ipa(syl), l1_inventory));
      } catch (const UnknownSymbolError& ex) {
        throw InventoryError(lineno, ex.fragment());
      }
      flat += render_ipa(e.syllables.syllables.back());
    }
    if (flat != render_ipa(e.ipa))
      throw ParseError(lineno, "syllable column does not flatten to IPA");
    std::size_t pos = 0;
    for (std::size_t s = 0; s + 1 < e.syllables.syllables.size(); ++s) {
      pos += e.syllables.syllables[s].size();
      e.syllables.boundary_indices.push_back(pos);
    }
    e.pos = parse_pos(cols[3]);
    if (cols.size() >= 5 && !cols[4].empty()) e.gloss = cols[4];
    if (cols.size() >= 6 && !cols[5].empty()) {
      try {
        e.frequency = std::stoull(cols[5]);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad frequency '" + cols[5] + "'");
      }
    }
    if (!seen.emplace(e.surface, render_ipa(e.ipa)).second)
      throw DuplicateEntryError(lineno);
    entries.push_back(std::move(e));
  }
  if (!header_seen) throw ParseError(1, "missing header row");
  return Lexicon(std::move(entries));
}

}  // namespace phonitale
