#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phonitale/phoneme.hpp"

namespace phonitale {

// One side of a rewrite context: nothing, a word edge, a literal symbol, or a
// named class.
struct ContextPattern {
  enum class Kind { None, Edge, Symbol, Class };
  Kind kind = Kind::None;
  std::string value;
};

struct RewriteRule {
  std::string id;
  std::string target;        // literal symbol or class name
  bool target_is_class = false;
  ContextPattern left_ctx;
  ContextPattern right_ctx;
  std::vector<std::string> replacement;  // possibly empty (deletion)
  int priority = 0;
  std::size_t file_order = 0;
};

struct RulePass {
  std::string name;
  std::vector<RewriteRule> rules;
};

class RuleSet {
 public:
  static RuleSet load(const std::string& path);

  const std::vector<RulePass>& passes() const { return passes_; }
  bool class_contains(const std::string& cls, const std::string& symbol) const;

  // Applies every pass to a raw symbol stream, left to right, never
  // re-matching a replacement within the same pass.
  std::vector<std::string> apply(const std::vector<std::string>& symbols) const;

 private:
  std::vector<RulePass> passes_;
  std::map<std::string, std::vector<std::string>> classes_;
};

// L2 -> L1 phoneme adaptation. The output is validated against the L1
// inventory; a surviving symbol outside it raises NoRuleApplicable.
PhonemeSequence adapt(const PhonemeSequence& p_l2, const RuleSet& rules,
                      const PhonemeInventory& l1_inventory);

// Character error rate over phoneme tokens: Levenshtein(hyp, ref) / len(ref).
double cer(const PhonemeSequence& hyp, const PhonemeSequence& ref);

// Exact match rate over (hyp, ref) pairs.
double emr(const std::vector<std::pair<PhonemeSequence, PhonemeSequence>>& pairs);

struct ParallelPair {
  std::string l2_word;
  PhonemeSequence l2_ipa;
  PhonemeSequence gold_l1_ipa;
  std::optional<std::vector<std::string>> gold_syllables;
};

// Tab-separated parallel corpus: l2_word, l2_ipa, l1_gold_ipa, l1_syllables
// ('.'-separated, may be empty); header row required.
std::vector<ParallelPair> load_parallel_corpus(
    const std::string& path, const PhonemeInventory& l2_inventory,
    const PhonemeInventory& l1_inventory);

}  // namespace phonitale
