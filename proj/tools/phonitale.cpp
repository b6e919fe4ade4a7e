// phonitale: keyword-mnemonic pipeline CLI.
//
// Input (transliterate/syllabify/retrieve/pipeline): TSV lines
//   l2_word <TAB> l2_ipa [<TAB> gloss;gloss;...]
// read from --input or stdin. generate reads retrieve JSONL records;
// evaluate reads full JSONL records plus an optional gold corpus.
#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phonitale/pipeline.hpp"

namespace {

using namespace phonitale;

struct InputRow {
  std::string word;
  std::string ipa;
  std::vector<std::string> glosses;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

std::vector<InputRow> read_rows(std::istream& in) {
  std::vector<InputRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 2)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'word<TAB>ipa[<TAB>glosses]'");
    InputRow row{cols[0], cols[1], {}};
    if (cols.size() > 2 && !cols[2].empty()) row.glosses = split(cols[2], ';');
    if (row.glosses.empty()) row.glosses.push_back(row.word);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

// Runs fn(i) for every index with at most `concurrency` worker threads.
void parallel_for(std::size_t count, std::size_t concurrency,
                  const std::function<void(std::size_t)>& fn) {
  if (concurrency < 1) concurrency = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
      fn(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < concurrency && t < count; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

struct CommonOpts {
  std::string config_path;
  std::string input_path;
  std::string lexicon_override;
  std::string rules_override;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::size_t> max_k;
  bool stub = false;
  bool live = false;
  std::string format = "records";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "Pipeline config JSON")->required();
  cmd->add_option("--input", o.input_path, "Input file (default: stdin)");
  cmd->add_option("--lexicon", o.lexicon_override, "Override lexicon path");
  cmd->add_option("--rules", o.rules_override, "Override rule file path");
  cmd->add_option("--seed", o.seed, "Override random seed");
  cmd->add_option("--n", o.n, "Cues to overgenerate per word");
  cmd->add_option("--max-k", o.max_k, "Maximum number of segments");
  auto* stub = cmd->add_flag("--stub", o.stub, "Use the offline stub client");
  cmd->add_flag("--live", o.live, "Use the live HTTP client")->excludes(stub);
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"records", "table"}));
}

PipelineConfig load_config(const CommonOpts& o) {
  PipelineConfig cfg = PipelineConfig::load(o.config_path);
  if (!o.lexicon_override.empty()) cfg.lexicon = o.lexicon_override;
  if (!o.rules_override.empty()) cfg.rules = o.rules_override;
  if (o.seed) cfg.seed = *o.seed;
  if (o.n) cfg.overgenerate_n = *o.n;
  if (o.max_k) cfg.max_k = *o.max_k;
  if (o.stub) cfg.client.mode = "stub";
  if (o.live) cfg.client.mode = "live";
  return cfg;
}

std::vector<InputRow> load_rows(const CommonOpts& o) {
  if (o.input_path.empty()) return read_rows(std::cin);
  std::ifstream in(o.input_path);
  if (!in) throw ConfigError("cannot open input: " + o.input_path);
  return read_rows(in);
}

std::vector<std::string> load_record_lines(const CommonOpts& o) {
  if (o.input_path.empty()) return read_lines(std::cin);
  std::ifstream in(o.input_path);
  if (!in) throw ConfigError("cannot open input: " + o.input_path);
  return read_lines(in);
}

// Shared driver: maps rows to MnemonicResults in input order, records
// per-row failures instead of aborting the batch.
int run_records(const CommonOpts& o, bool with_cues) {
  PipelineConfig cfg = load_config(o);
  Pipeline pipeline(cfg);
  auto rows = load_rows(o);

  std::vector<MnemonicResult> results(rows.size());
  parallel_for(rows.size(), cfg.concurrency, [&](std::size_t i) {
    try {
      results[i] = with_cues
                       ? pipeline.run(rows[i].word, rows[i].ipa, rows[i].glosses)
                       : pipeline.retrieve(rows[i].word, rows[i].ipa,
                                           rows[i].glosses);
    } catch (const Error& e) {
      results[i].l2_word = rows[i].word;
      results[i].glosses = rows[i].glosses;
      results[i].error = e.what();
    }
  });

  bool partial = false;
  for (const auto& r : results) {
    if (!r.error.empty()) partial = true;
    if (o.format == "table")
      std::cout << result_to_table(r);
    else
      std::cout << result_to_json(r) << "\n";
  }
  return partial ? 1 : 0;
}

int cmd_transliterate(const CommonOpts& o) {
  PipelineConfig cfg = load_config(o);
  Pipeline pipeline(cfg);
  auto rows = load_rows(o);
  std::vector<std::string> out(rows.size());
  std::string hard_error;
  std::mutex mu;
  parallel_for(rows.size(), cfg.concurrency, [&](std::size_t i) {
    try {
      out[i] = render_ipa(pipeline.transliterate(rows[i].ipa));
    } catch (const Error& e) {
      std::lock_guard<std::mutex> lock(mu);
      if (hard_error.empty())
        hard_error = "row " + std::to_string(i + 1) + " (" + rows[i].word +
                     "): " + e.what();
    }
  });
  if (!hard_error.empty()) {
    std::cerr << "phonitale: " << hard_error << "\n";
    return 2;
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::cout << rows[i].word << "\t" << out[i] << "\n";
  return 0;
}

int cmd_syllabify(const CommonOpts& o) {
  PipelineConfig cfg = load_config(o);
  Pipeline pipeline(cfg);
  auto rows = load_rows(o);
  std::vector<std::string> out(rows.size());
  std::vector<std::string> errors(rows.size());
  parallel_for(rows.size(), cfg.concurrency, [&](std::size_t i) {
    try {
      PhonemeSequence adapted = pipeline.transliterate(rows[i].ipa);
      out[i] = syllabify(adapted, pipeline.coda_set()).render();
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  bool partial = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      partial = true;
      std::cout << rows[i].word << "\tERROR\t" << errors[i] << "\n";
    } else {
      std::cout << rows[i].word << "\t" << out[i] << "\n";
    }
  }
  return partial ? 1 : 0;
}

int cmd_generate(const CommonOpts& o) {
  PipelineConfig cfg = load_config(o);
  Pipeline pipeline(cfg);
  auto lines = load_record_lines(o);
  std::vector<MnemonicResult> results(lines.size());
  parallel_for(lines.size(), cfg.concurrency, [&](std::size_t i) {
    try {
      results[i] = result_from_json(lines[i], pipeline);
      if (results[i].error.empty()) pipeline.generate_for(results[i]);
    } catch (const Error& e) {
      results[i].error = e.what();
    } catch (const nlohmann::json::exception& e) {
      results[i].error = std::string("record parse: ") + e.what();
    }
  });
  bool partial = false;
  for (const auto& r : results) {
    if (!r.error.empty()) partial = true;
    if (o.format == "table")
      std::cout << result_to_table(r);
    else
      std::cout << result_to_json(r) << "\n";
  }
  return partial ? 1 : 0;
}

int cmd_evaluate(const CommonOpts& o, const std::string& gold_path) {
  PipelineConfig cfg = load_config(o);
  Pipeline pipeline(cfg);
  auto lines = load_record_lines(o);

  std::vector<EvalItem> items;
  bool partial = false;
  for (const auto& line : lines) {
    MnemonicResult r = result_from_json(line, pipeline);
    if (!r.error.empty()) {
      partial = true;
      continue;
    }
    EvalItem item;
    item.target = VocabEntry{r.l2_word, r.glosses};
    item.adapted_ipa = r.adapted_ipa;
    for (const auto& [entry, score] : r.keywords.keywords)
      item.proposed_keywords.push_back(entry);
    if (r.chosen_cue && *r.chosen_cue < r.cues.size()) {
      const auto& rc = r.cues[*r.chosen_cue];
      item.cue = rc.cue;
      item.cc = rc.cc;
      item.ppl = rc.ppl;
    }
    items.push_back(std::move(item));
  }
  if (items.empty()) throw ConfigError("no evaluable records in input");
  EvalReport report = build_report(items);

  nlohmann::json out;
  out["report"] = nlohmann::json::parse(report_to_json(report));

  if (!gold_path.empty()) {
    auto pairs = load_parallel_corpus(gold_path, pipeline.inventory_l2(),
                                      pipeline.inventory_l1());
    double cer_sum = 0.0;
    std::vector<std::pair<PhonemeSequence, PhonemeSequence>> hyp_ref;
    double f1_sum = 0.0;
    std::size_t f1_n = 0;
    for (const auto& p : pairs) {
      PhonemeSequence hyp =
          adapt(p.l2_ipa, pipeline.rules(), pipeline.inventory_l1());
      cer_sum += cer(hyp, p.gold_l1_ipa);
      hyp_ref.emplace_back(hyp, p.gold_l1_ipa);
      if (p.gold_syllables) {
        SyllableSequence pred = syllabify(p.gold_l1_ipa, pipeline.coda_set());
        SyllableSequence gold;
        std::size_t pos = 0;
        for (std::size_t s = 0; s < p.gold_syllables->size(); ++s) {
          PhonemeSequence syl =
              parse_ipa((*p.gold_syllables)[s], pipeline.inventory_l1());
          pos += syl.size();
          gold.syllables.push_back(std::move(syl));
          if (s + 1 < p.gold_syllables->size())
            gold.boundary_indices.push_back(pos);
        }
        auto [prec, rec, f1] = boundary_f1(pred, gold);
        (void)prec;
        (void)rec;
        f1_sum += f1;
        ++f1_n;
      }
    }
    out["cer"] = cer_sum / static_cast<double>(pairs.size());
    out["emr"] = emr(hyp_ref);
    if (f1_n) out["boundary_f1"] = f1_sum / static_cast<double>(f1_n);
  }

  if (o.format == "table") {
    std::cout << report_to_table(report);
    if (out.contains("cer")) {
      std::cout << "cer: " << out["cer"].get<double>() << "\n";
      std::cout << "emr: " << out["emr"].get<double>() << "\n";
      if (out.contains("boundary_f1"))
        std::cout << "boundary_f1: " << out["boundary_f1"].get<double>() << "\n";
    }
  } else {
    std::cout << out.dump() << "\n";
  }
  return partial ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-lingual keyword-mnemonic pipeline"};
  app.require_subcommand(1);

  CommonOpts translit_o, syll_o, retr_o, gen_o, eval_o, pipe_o;
  std::string gold_path;

  add_common(app.add_subcommand("transliterate", "Adapt L2 IPA to L1 phonemes"),
             translit_o);
  add_common(app.add_subcommand("syllabify", "Adapted IPA split into syllables"),
             syll_o);
  add_common(app.add_subcommand("retrieve", "Keyword sequence retrieval"),
             retr_o);
  add_common(app.add_subcommand("generate", "Verbal cue generation on records"),
             gen_o);
  auto* eval_cmd =
      app.add_subcommand("evaluate", "Batch evaluation of result records");
  add_common(eval_cmd, eval_o);
  eval_cmd->add_option("--gold", gold_path,
                       "Gold parallel corpus for CER/EMR/boundary F1");
  add_common(app.add_subcommand("pipeline", "End-to-end retrieval + cues"),
             pipe_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("transliterate")) return cmd_transliterate(translit_o);
    if (app.got_subcommand("syllabify")) return cmd_syllabify(syll_o);
    if (app.got_subcommand("retrieve")) return run_records(retr_o, false);
    if (app.got_subcommand("generate")) return cmd_generate(gen_o);
    if (app.got_subcommand("evaluate")) return cmd_evaluate(eval_o, gold_path);
    if (app.got_subcommand("pipeline")) return run_records(pipe_o, true);
  } catch (const phonitale::Error& e) {
    std::cerr << "phonitale: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "phonitale: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
