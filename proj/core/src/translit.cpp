#include "phonitale/translit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace phonitale {
namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool is_class_name(const std::string& tok) {
  return !tok.empty() && tok[0] >= 'A' && tok[0] <= 'Z';
}

ContextPattern parse_context(const std::string& tok) {
  ContextPattern p;
  if (tok.empty()) {
    p.kind = ContextPattern::Kind::None;
  } else if (tok == "#") {
    p.kind = ContextPattern::Kind::Edge;
  } else if (is_class_name(tok)) {
    p.kind = ContextPattern::Kind::Class;
    p.value = tok;
  } else {
    p.kind = ContextPattern::Kind::Symbol;
    p.value = tok;
  }
  return p;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

}  // namespace

RuleSet RuleSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rule file: " + path);

  RuleSet rs;
  RulePass* current = nullptr;
  bool in_classes = false;
  std::string line;
  std::size_t lineno = 0;
  std::size_t order = 0;

  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;

    if (line.front() == '[' && line.back() == ']') {
      std::string header = trim(line.substr(1, line.size() - 2));
      if (header == "classes") {
        in_classes = true;
        current = nullptr;
      } else if (header.rfind("pass ", 0) == 0) {
        in_classes = false;
        rs.passes_.push_back(RulePass{trim(header.substr(5)), {}});
        current = &rs.passes_.back();
      } else {
        throw ParseError(lineno, "unknown section '" + header + "'");
      }
      continue;
    }

    if (in_classes) {
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError(lineno, "class line needs 'NAME = symbols'");
      std::string name = trim(line.substr(0, eq));
      if (!is_class_name(name))
        throw ParseError(lineno, "class names start with an upper-case letter");
      rs.classes_[name] = split_ws(line.substr(eq + 1));
      continue;
    }

    if (!current) throw ParseError(lineno, "rule outside of a pass section");

    // target [/ left _ right] -> replacement ; priority
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError(lineno, "missing '->'");
    std::size_t semi = line.rfind(';');
    if (semi == std::string::npos || semi < arrow)
      throw ParseError(lineno, "missing '; priority'");

    std::string lhs = trim(line.substr(0, arrow));
    std::string repl = trim(line.substr(arrow + 2, semi - arrow - 2));
    std::string prio = trim(line.substr(semi + 1));

    RewriteRule rule;
    rule.file_order = order++;
    try {
      rule.priority = std::stoi(prio);
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad priority '" + prio + "'");
    }
    rule.replacement = split_ws(repl);

    std::size_t slash = lhs.find('/');
    std::string target_part = slash == std::string::npos
                                  ? lhs
                                  : trim(lhs.substr(0, slash));
    if (target_part.empty()) throw ParseError(lineno, "empty target");
    rule.target = target_part;
    rule.target_is_class = is_class_name(target_part);

    if (slash != std::string::npos) {
      std::string ctx = trim(lhs.substr(slash + 1));
      std::size_t us = ctx.find('_');
      if (us == std::string::npos)
        throw ParseError(lineno, "context needs '_'");
      rule.left_ctx = parse_context(trim(ctx.substr(0, us)));
      rule.right_ctx = parse_context(trim(ctx.substr(us + 1)));
    }
    rule.id = current->name + ":" + std::to_string(rule.file_order);
    current->rules.push_back(std::move(rule));
  }
  if (rs.passes_.empty()) throw ConfigError("rule file defines no passes");
  return rs;
}

bool RuleSet::class_contains(const std::string& cls,
                             const std::string& symbol) const {
  auto it = classes_.find(cls);
  if (it == classes_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), symbol) !=
         it->second.end();
}

std::vector<std::string> RuleSet::apply(
    const std::vector<std::string>& symbols) const {
  std::vector<std::string> cur = symbols;
  for (const auto& pass : passes_) {
    std::vector<std::string> next;
    next.reserve(cur.size() + 4);
    std::size_t i = 0;
    while (i < cur.size()) {
      const RewriteRule* best = nullptr;
      for (const auto& rule : pass.rules) {
        bool target_ok = rule.target_is_class
                             ? class_contains(rule.target, cur[i])
                             : rule.target == cur[i];
        if (!target_ok) continue;
        // Left context sees the already-rewritten side of the stream.
        auto ctx_ok = [&](const ContextPattern& p, bool left) {
          switch (p.kind) {
            case ContextPattern::Kind::None:
              return true;
            case ContextPattern::Kind::Edge:
              return left ? next.empty() : i + 1 >= cur.size();
            case ContextPattern::Kind::Symbol: {
              if (left) return !next.empty() && next.back() == p.value;
              return i + 1 < cur.size() && cur[i + 1] == p.value;
            }
            case ContextPattern::Kind::Class: {
              if (left)
                return !next.empty() && class_contains(p.value, next.back());
              return i + 1 < cur.size() &&
                     class_contains(p.value, cur[i + 1]);
            }
          }
          return false;
        };
        if (!ctx_ok(rule.left_ctx, true) || !ctx_ok(rule.right_ctx, false))
          continue;
        if (!best || rule.priority > best->priority ||
            (rule.priority == best->priority &&
             rule.file_order < best->file_order))
          best = &rule;
      }
      if (best) {
        for (const auto& r : best->replacement) next.push_back(r);
      } else {
        next.push_back(cur[i]);
      }
      ++i;
    }
    cur = std::move(next);
  }
  return cur;
}

PhonemeSequence adapt(const PhonemeSequence& p_l2, const RuleSet& rules,
                      const PhonemeInventory& l1_inventory) {
  std::vector<std::string> symbols;
  symbols.reserve(p_l2.size());
  for (const auto& p : p_l2.phonemes()) symbols.push_back(p.symbol);

  std::vector<std::string> adapted = rules.apply(symbols);

  std::vector<Phoneme> out;
  out.reserve(adapted.size());
  for (const auto& s : adapted) {
    const Phoneme* p = l1_inventory.find(s);
    if (!p) throw NoRuleApplicableError(s);
    out.push_back(*p);
  }
  return PhonemeSequence(std::move(out), l1_inventory.language_tag());
}

double cer(const PhonemeSequence& hyp, const PhonemeSequence& ref) {
  if (ref.empty()) {
    if (hyp.empty()) return 0.0;
    throw EmptyReferenceError();
  }
  const std::size_t n = hyp.size();
  const std::size_t m = ref.size();
  std::vector<std::size_t> prev(m + 1), row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    row[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub =
          prev[j - 1] + (hyp[i - 1].symbol == ref[j - 1].symbol ? 0 : 1);
      row[j] = std::min({prev[j] + 1, row[j - 1] + 1, sub});
    }
    std::swap(prev, row);
  }
  return static_cast<double>(prev[m]) / static_cast<double>(m);
}

double emr(
    const std::vector<std::pair<PhonemeSequence, PhonemeSequence>>& pairs) {
  if (pairs.empty()) throw EmptyListError("EMR over empty pair list");
  std::size_t hits = 0;
  for (const auto& [hyp, ref] : pairs)
    if (hyp == ref) ++hits;
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

std::vector<ParallelPair> load_parallel_corpus(
    const std::string& path, const PhonemeInventory& l2_inventory,
    const PhonemeInventory& l1_inventory) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open parallel corpus: " + path);

  std::vector<ParallelPair> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // header row required, contents not interpreted
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() < 3)
      throw ParseError(lineno, "expected at least 3 tab-separated columns");
    ParallelPair pair;
    pair.l2_word = cols[0];
    try {
      pair.l2_ipa = parse_ipa(normalize_ipa(cols[1]), l2_inventory);
      pair.gold_l1_ipa = parse_ipa(normalize_ipa(cols[2]), l1_inventory);
    } catch (const UnknownSymbolError& e) {
      throw InventoryError(lineno, e.fragment());
    }
    if (cols.size() >= 4 && !cols[3].empty()) {
      std::vector<std::string> sylls;
      std::stringstream ss(cols[3]);
      std::string syl;
      while (std::getline(ss, syl, '.'))
        if (!syl.empty()) sylls.push_back(syl);
      // The syllable column must flatten to the gold IPA.
      std::string flat;
      for (const auto& s : sylls) flat += s;
      if (flat != render_ipa(pair.gold_l1_ipa))
        throw ParseError(lineno, "syllable column does not flatten to gold IPA");
      pair.gold_syllables = std::move(sylls);
    }
    out.push_back(std::move(pair));
  }
  if (!header_seen) throw ParseError(1, "missing header row");
  return out;
}

}  // namespace phonitale
