#include "phonitale/cue.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace phonitale {
namespace {

std::string join(const std::vector<std::string>& parts,
                 const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string replace_all(std::string text, const std::string& from,
                        const std::string& to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

// Extracts the first balanced {...} object from a completion.
std::optional<std::string> extract_json_object(const std::string& text) {
  std::size_t start = text.find('{');
  if (start == std::string::npos) return std::nullopt;
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}') {
      --depth;
      if (depth == 0) return text.substr(start, i - start + 1);
    }
  }
  return std::nullopt;
}

}  // namespace

PromptTemplate PromptTemplate::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open prompt template: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return PromptTemplate(ss.str());
}

PromptTemplate::PromptTemplate(std::string text) : text_(std::move(text)) {
  if (text_.find("{{glosses}}") == std::string::npos ||
      text_.find("{{keywords}}") == std::string::npos)
    throw ConfigError("prompt template missing {{glosses}} or {{keywords}}");
}

std::string PromptTemplate::fill(
    const VocabEntry& entry,
    const std::vector<std::string>& keyword_surfaces) const {
  std::string out = replace_all(text_, "{{glosses}}", join(entry.glosses, ", "));
  return replace_all(out, "{{keywords}}", join(keyword_surfaces, ", "));
}

std::string build_prompt(const PromptTemplate& tmpl, const VocabEntry& entry,
                         const KeywordSequence& keywords) {
  if (entry.l2_word.empty() || entry.glosses.empty())
    throw Error("vocab entry needs a word and at least one gloss");
  if (keywords.keywords.empty() || keywords.keywords.size() > 2)
    throw Error("prompt expects 1-2 keywords");
  std::vector<std::string> surfaces;
  for (const auto& [entry_, score] : keywords.keywords)
    surfaces.push_back(entry_.surface);
  return tmpl.fill(entry, surfaces);
}

std::vector<VerbalCue> generate_cues(const VocabEntry& entry,
                                     const KeywordSequence& keywords,
                                     const PromptTemplate& tmpl,
                                     const GeneratorClient& client,
                                     std::size_t n, double temperature,
                                     std::vector<DroppedCandidate>* dropped) {
  if (n < 1) throw Error("overgeneration count must be >= 1");
  std::string prompt = build_prompt(tmpl, entry, keywords);
  std::vector<std::string> completions = client.complete(prompt, n, temperature);

  std::vector<VerbalCue> cues;
  auto drop = [&](const std::string& raw, const std::string& reason) {
    if (dropped) dropped->push_back({raw, reason});
  };

  for (const auto& raw : completions) {
    auto obj_text = extract_json_object(raw);
    if (!obj_text) {
      drop(raw, "no_json_object");
      continue;
    }
    nlohmann::json obj = nlohmann::json::parse(*obj_text, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      drop(raw, "malformed_json");
      continue;
    }
    if (!obj.contains("목표 단어") || !obj.contains("이야기") ||
        !obj["목표 단어"].is_string() || !obj["이야기"].is_string()) {
      drop(raw, "missing_fields");
      continue;
    }
    VerbalCue cue;
    cue.chosen_gloss = obj["목표 단어"].get<std::string>();
    cue.text = obj["이야기"].get<std::string>();

    if (std::find(entry.glosses.begin(), entry.glosses.end(),
                  cue.chosen_gloss) == entry.glosses.end()) {
      drop(raw, "unknown_target");
      continue;
    }
    // Exactly one <...> bracketed target.
    std::size_t open = cue.text.find('<');
    std::size_t close = open == std::string::npos
                            ? std::string::npos
                            : cue.text.find('>', open + 1);
    if (open == std::string::npos || close == std::string::npos ||
        cue.text.find('<', open + 1) != std::string::npos ||
        cue.text.find('>', close + 1) != std::string::npos) {
      drop(raw, "target_bracket_violation");
      continue;
    }
    cue.target_span = {open, close + 1};

    std::size_t prev_pos = 0;
    bool out_of_order = false;
    for (const auto& [kw, score] : keywords.keywords) {
      std::size_t pos = cue.text.find(kw.surface);
      if (pos == std::string::npos) {
        cue.keyword_spans.emplace_back(kw.surface, std::nullopt);
        continue;
      }
      cue.keyword_spans.emplace_back(
          kw.surface, std::make_pair(pos, pos + kw.surface.size()));
      if (pos < prev_pos) out_of_order = true;
      prev_pos = pos;
    }
    cue.order_violation = out_of_order;
    cues.push_back(std::move(cue));
  }
  if (cues.empty()) throw AllCandidatesInvalidError();
  return cues;
}

double context_completeness(const VerbalCue& cue, const GeneratorClient& client,
                            const EmbeddingProvider& embedder,
                            double temperature) {
  if (cue.target_span.second <= cue.target_span.first ||
      cue.target_span.second > cue.text.size())
    throw Error("cue has no valid target span");

  std::string masked = cue.text;
  masked.replace(cue.target_span.first,
                 cue.target_span.second - cue.target_span.first, kMaskMarker);
  std::string prompt =
      "다음 문장의 " + std::string(kMaskMarker) +
      " 자리에 들어갈 가장 그럴듯한 단어를 한 개씩 제시하세요.\n\n문장: " +
      masked + "\n단어:";

  std::vector<std::string> candidates = client.complete(prompt, 5, temperature);
  if (candidates.size() != 5)
    throw ClientError("expected exactly 5 fill-in candidates");

  std::vector<double> gloss_vec = embedder.vec(cue.chosen_gloss);
  double gloss_norm = std::sqrt(std::inner_product(
      gloss_vec.begin(), gloss_vec.end(), gloss_vec.begin(), 0.0));
  if (gloss_norm == 0.0) throw EmbedderError("zero-norm gloss embedding");

  double sum = 0.0;
  for (const auto& cand : candidates) {
    std::vector<double> v = embedder.vec(cand);
    if (v.size() != gloss_vec.size())
      throw EmbedderError("embedding dimension mismatch");
    double dot = std::inner_product(v.begin(), v.end(), gloss_vec.begin(), 0.0);
    double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    sum += norm == 0.0 ? 0.0 : dot / (norm * gloss_norm);
  }
  return sum / 5.0;
}

std::vector<std::size_t> rank_cues(const std::vector<VerbalCue>& cues,
                                   const std::vector<double>& cc_scores,
                                   const std::vector<double>& ppl_scores) {
  if (cues.size() != cc_scores.size() || cues.size() != ppl_scores.size())
    throw LengthMismatchError("rank_cues: score lists must parallel cues");
  std::vector<std::size_t> order(cues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (cc_scores[a] != cc_scores[b])
                       return cc_scores[a] > cc_scores[b];
                     return ppl_scores[a] < ppl_scores[b];
                   });
  return order;
}

}  // namespace phonitale
