#include "phonitale/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace phonitale {
namespace {

std::string resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return p;
  std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return (base / path).lexically_normal().string();
}

std::unique_ptr<GeneratorClient> make_client(const ClientSettings& s,
                                             std::uint64_t seed) {
  if (s.mode == "stub") return std::make_unique<StubGeneratorClient>(seed);
  if (s.mode == "live")
    return std::make_unique<HttpGeneratorClient>(s.host, s.port, s.path,
                                                 s.model, s.credential_env);
  throw ConfigError("client mode must be 'stub' or 'live', got '" + s.mode + "'");
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON: " + path);

  std::filesystem::path base = std::filesystem::path(path).parent_path();
  PipelineConfig c;
  auto get_path = [&](const char* key, std::string& out, bool required) {
    if (j.contains(key)) {
      out = resolve(base, j.at(key).get<std::string>());
    } else if (required) {
      throw ConfigError(std::string("config missing required path: ") + key);
    }
    if (!out.empty() && !std::filesystem::exists(out))
      throw ConfigError(std::string(key) + " does not exist: " + out);
  };
  get_path("feature_table", c.feature_table, true);
  get_path("inventory_l2", c.inventory_l2, true);
  get_path("inventory_l1", c.inventory_l1, true);
  get_path("coda_set", c.coda_set, true);
  get_path("rules", c.rules, true);
  get_path("lexicon", c.lexicon, true);
  get_path("prompt_template", c.prompt_template, true);
  get_path("bigram_table", c.bigram_table, true);
  get_path("manifest", c.manifest, false);

  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    if (w.contains("lambda_syll")) c.weights.lambda_syll = w.at("lambda_syll");
    if (w.contains("lambda_first")) c.weights.lambda_first = w.at("lambda_first");
    if (w.contains("lambda_substr")) c.weights.lambda_substr = w.at("lambda_substr");
    if (w.contains("lambda_early")) c.weights.lambda_early = w.at("lambda_early");
    if (w.contains("early_phone_count"))
      c.weights.early_phone_count = w.at("early_phone_count");
    if (w.contains("score_floor")) c.weights.score_floor = w.at("score_floor");
    if (c.weights.lambda_syll < 0 || c.weights.lambda_first < 0 ||
        c.weights.lambda_substr < 0 || c.weights.lambda_early < 0)
      throw ConfigError("structural weights must be non-negative");
  }
  if (j.contains("max_k")) c.max_k = j.at("max_k").get<std::size_t>();
  if (j.contains("overgenerate_n"))
    c.overgenerate_n = j.at("overgenerate_n").get<std::size_t>();
  if (j.contains("concurrency"))
    c.concurrency = j.at("concurrency").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("client")) {
    const auto& cl = j.at("client");
    if (cl.contains("mode")) c.client.mode = cl.at("mode");
    if (cl.contains("host")) c.client.host = cl.at("host");
    if (cl.contains("port")) c.client.port = cl.at("port");
    if (cl.contains("path")) c.client.path = cl.at("path");
    if (cl.contains("model")) c.client.model = cl.at("model");
    if (cl.contains("credential_env"))
      c.client.credential_env = cl.at("credential_env");
    if (cl.contains("temperature")) c.client.temperature = cl.at("temperature");
  }
  return c;
}

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open for checksum: " + path);
  std::uint64_t h = 14695981039346656037ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (!in) break;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(h));
  return out;
}

void verify_manifest(const std::string& manifest_path,
                     const std::vector<std::string>& files) {
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("cannot open manifest: " + manifest_path);
  std::map<std::string, std::string> expected;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ConfigError("manifest line needs 'name<TAB>checksum': " + line);
    expected[line.substr(0, tab)] = line.substr(tab + 1);
  }
  for (const auto& f : files) {
    if (f.empty()) continue;
    std::string name = std::filesystem::path(f).filename().string();
    auto it = expected.find(name);
    // Only bundled assets are pinned; user-supplied overrides are unlisted.
    if (it == expected.end()) continue;
    std::string actual = file_checksum(f);
    if (actual != it->second)
      throw ConfigError("checksum mismatch for " + name + ": expected " +
                        it->second + ", got " + actual);
  }
}

Pipeline::Pipeline(const PipelineConfig& config)
    : config_(config),
      inv_l2_(PhonemeInventory::load(LanguageTag::L2_EN, config.feature_table,
                                     config.inventory_l2)),
      inv_l1_(PhonemeInventory::load(LanguageTag::L1_KO, config.feature_table,
                                     config.inventory_l1)),
      rules_(RuleSet::load(config.rules)),
      coda_(load_coda_set(config.coda_set)),
      lexicon_(Lexicon::load(config.lexicon, inv_l1_)),
      tmpl_(PromptTemplate::load(config.prompt_template)),
      client_(make_client(config.client, config.seed)),
      ppl_(StubPerplexity::load(config.bigram_table)) {
  if (!config.manifest.empty())
    verify_manifest(config.manifest,
                    {config.feature_table, config.inventory_l2,
                     config.inventory_l1, config.coda_set, config.rules,
                     config.lexicon, config.prompt_template,
                     config.bigram_table});
}

PhonemeSequence Pipeline::transliterate(const std::string& l2_ipa_text) const {
  PhonemeSequence l2 = parse_ipa(normalize_ipa(l2_ipa_text), inv_l2_);
  return adapt(l2, rules_, inv_l1_);
}

MnemonicResult Pipeline::retrieve(const std::string& l2_word,
                                  const std::string& l2_ipa_text,
                                  const std::vector<std::string>& glosses) const {
  MnemonicResult r;
  r.l2_word = l2_word;
  r.glosses = glosses;
  PhonemeSequence l2 = parse_ipa(normalize_ipa(l2_ipa_text), inv_l2_);
  r.adapted_ipa = adapt(l2, rules_, inv_l1_);
  r.syllables = syllabify(r.adapted_ipa, coda_);
  r.keywords = retrieve_sequence(l2, lexicon_, rules_, inv_l1_, coda_,
                                 config_.weights, config_.max_k);
  return r;
}

void Pipeline::generate_for(MnemonicResult& r) const {
  VocabEntry entry{r.l2_word, r.glosses};
  std::vector<DroppedCandidate> dropped;
  std::vector<VerbalCue> cues =
      generate_cues(entry, r.keywords, tmpl_, *client_, config_.overgenerate_n,
                    config_.client.temperature, &dropped);
  std::vector<double> cc, ppl;
  cc.reserve(cues.size());
  ppl.reserve(cues.size());
  for (const auto& cue : cues) {
    cc.push_back(context_completeness(cue, *client_, embedder_,
                                      config_.client.temperature));
    ppl.push_back(ppl_.ppl(cue.text));
  }
  std::vector<std::size_t> order = rank_cues(cues, cc, ppl);
  r.cues.clear();
  for (std::size_t idx : order)
    r.cues.push_back(RankedCue{cues[idx], cc[idx], ppl[idx]});
  if (!r.cues.empty()) r.chosen_cue = 0;
}

MnemonicResult Pipeline::run(const std::string& l2_word,
                             const std::string& l2_ipa_text,
                             const std::vector<std::string>& glosses) const {
  MnemonicResult r = retrieve(l2_word, l2_ipa_text, glosses);
  generate_for(r);
  return r;
}

std::string result_to_json(const MnemonicResult& r) {
  nlohmann::json j;
  j["l2_word"] = r.l2_word;
  j["glosses"] = r.glosses;
  j["error"] = r.error;
  if (!r.error.empty()) return j.dump();

  j["adapted_ipa"] = render_ipa(r.adapted_ipa);
  nlohmann::json sylls = nlohmann::json::array();
  for (const auto& s : r.syllables.syllables) sylls.push_back(render_ipa(s));
  j["syllables"] = sylls;

  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : r.keywords.segments) segs.push_back(s.render());
  j["segments"] = segs;
  j["segmentation"] = r.keywords.segmentation.boundaries;

  nlohmann::json kws = nlohmann::json::array();
  for (const auto& [entry, score] : r.keywords.keywords) {
    nlohmann::json k;
    k["surface"] = entry.surface;
    k["ipa"] = render_ipa(entry.ipa);
    nlohmann::json esylls = nlohmann::json::array();
    for (const auto& s : entry.syllables.syllables)
      esylls.push_back(render_ipa(s));
    k["syllables"] = esylls;
    k["base_cos"] = score.base_cos;
    k["adjustment"] = score.adjustment;
    k["total"] = score.total;
    k["flags"] = {{"syllable_overlap", score.syllable_overlap},
                  {"initial_match", score.initial_match},
                  {"substring", score.substring},
                  {"early_phone", score.early_phone}};
    k["low_confidence"] = score.low_confidence;
    kws.push_back(std::move(k));
  }
  j["keywords"] = kws;
  j["seq_score"] = r.keywords.seq_score;

  nlohmann::json cues = nlohmann::json::array();
  for (const auto& rc : r.cues) {
    cues.push_back({{"text", rc.cue.text},
                    {"target", rc.cue.chosen_gloss},
                    {"cc", rc.cc},
                    {"ppl", rc.ppl},
                    {"order_violation", rc.cue.order_violation}});
  }
  j["cues"] = cues;
  if (r.chosen_cue) j["chosen_cue"] = *r.chosen_cue;
  return j.dump();
}

MnemonicResult result_from_json(const std::string& text,
                                const Pipeline& pipeline) {
  nlohmann::json j = nlohmann::json::parse(text);
  MnemonicResult r;
  r.l2_word = j.at("l2_word").get<std::string>();
  r.glosses = j.at("glosses").get<std::vector<std::string>>();
  r.error = j.value("error", "");
  if (!r.error.empty()) return r;

  const auto& inv = pipeline.inventory_l1();
  r.adapted_ipa = parse_ipa(j.at("adapted_ipa").get<std::string>(), inv);
  std::size_t pos = 0;
  for (const auto& s : j.at("syllables")) {
    r.syllables.syllables.push_back(parse_ipa(s.get<std::string>(), inv));
    pos += r.syllables.syllables.back().size();
    if (r.syllables.syllables.size() < j.at("syllables").size())
      r.syllables.boundary_indices.push_back(pos);
  }
  for (const auto& k : j.at("keywords")) {
    LexiconEntry e;
    e.surface = k.at("surface").get<std::string>();
    e.ipa = parse_ipa(k.at("ipa").get<std::string>(), inv);
    std::size_t spos = 0;
    const auto& esylls = k.at("syllables");
    for (const auto& s : esylls) {
      e.syllables.syllables.push_back(parse_ipa(s.get<std::string>(), inv));
      spos += e.syllables.syllables.back().size();
      if (e.syllables.syllables.size() < esylls.size())
        e.syllables.boundary_indices.push_back(spos);
    }
    MatchScore m;
    m.base_cos = k.at("base_cos").get<double>();
    m.adjustment = k.at("adjustment").get<double>();
    m.total = k.at("total").get<double>();
    m.syllable_overlap = k.at("flags").at("syllable_overlap").get<bool>();
    m.initial_match = k.at("flags").at("initial_match").get<bool>();
    m.substring = k.at("flags").at("substring").get<bool>();
    m.early_phone = k.at("flags").at("early_phone").get<bool>();
    m.low_confidence = k.at("low_confidence").get<bool>();
    r.keywords.keywords.emplace_back(std::move(e), m);
  }
  r.keywords.seq_score = j.at("seq_score").get<double>();
  if (j.contains("segmentation")) {
    r.keywords.segmentation.boundaries =
        j.at("segmentation").get<std::vector<std::size_t>>();
    r.keywords.segments = r.keywords.segmentation.segments(r.syllables);
  }
  for (const auto& c : j.value("cues", nlohmann::json::array())) {
    RankedCue rc;
    rc.cue.text = c.at("text").get<std::string>();
    rc.cue.chosen_gloss = c.at("target").get<std::string>();
    rc.cue.order_violation = c.value("order_violation", false);
    std::size_t open = rc.cue.text.find('<');
    std::size_t close = rc.cue.text.find('>');
    if (open != std::string::npos && close != std::string::npos && close > open)
      rc.cue.target_span = {open, close + 1};
    rc.cc = c.at("cc").get<double>();
    rc.ppl = c.at("ppl").get<double>();
    r.cues.push_back(std::move(rc));
  }
  if (j.contains("chosen_cue"))
    r.chosen_cue = j.at("chosen_cue").get<std::size_t>();
  return r;
}

std::string result_to_table(const MnemonicResult& r) {
  std::ostringstream out;
  out << r.l2_word << "\n";
  if (!r.error.empty()) {
    out << "  error: " << r.error << "\n";
    return out.str();
  }
  out << "  adapted:   /" << render_ipa(r.adapted_ipa) << "/\n";
  out << "  syllables: " << r.syllables.render() << "\n";
  out << "  keywords:  ";
  for (std::size_t i = 0; i < r.keywords.keywords.size(); ++i) {
    const auto& [e, s] = r.keywords.keywords[i];
    if (i) out << " + ";
    out << e.surface << " /" << render_ipa(e.ipa) << "/";
  }
  out << "  (score " << r.keywords.seq_score << ")\n";
  if (r.chosen_cue && *r.chosen_cue < r.cues.size()) {
    const auto& rc = r.cues[*r.chosen_cue];
    out << "  cue:       " << rc.cue.text << "  (cc " << rc.cc << ", ppl "
        << rc.ppl << ")\n";
  }
  return out.str();
}

}  // namespace phonitale
