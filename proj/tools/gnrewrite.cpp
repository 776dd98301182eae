// gnrewrite - gender-neutral rewriting toolkit.
//
// Subcommands:
//   rewrite   rewrite gendered sentences into singular-they form
//   eval      score a system output against a neutral reference (WER)
//   sample    draw a form-balanced sample from a corpus
//   parallel  produce a gendered/neutral parallel corpus
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnr/conllu.hpp"
#include "gnr/corpus.hpp"
#include "gnr/nouns.hpp"
#include "gnr/rewrite.hpp"
#include "gnr/tagger.hpp"
#include "gnr/wer.hpp"

namespace {

using nlohmann::json;

struct CliConfig {
  std::string input = "-";
  std::string output = "-";
  std::string source_file, hypothesis_file, reference_file;
  std::string src_out, tgt_out;
  bool nouns = false;
  bool paper_exact = false;
  std::string lexicon_path;
  std::string contractions = "preserve";
  std::string conllu_path;
  std::string titles_path;
  std::string mode = "tokenized";
  bool ignore_case = false;
  bool json_output = false;
  std::uint64_t seed = 0;
  std::size_t n = 0;
};

std::istream& open_input(const std::string& path, std::ifstream& file) {
  if (path == "-") return std::cin;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open input file: " + path);
  return file;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

std::map<std::string, std::string> load_title_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open title map: " + path);
  std::map<std::string, std::string> map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw std::runtime_error("malformed title map row at " + path + ":" +
                               std::to_string(lineno));
    }
    map[gnr::detail::lower_copy(line.substr(0, tab))] = line.substr(tab + 1);
  }
  return map;
}

gnr::RewriteOptions make_options(const CliConfig& cfg) {
  gnr::RewriteOptions opts;
  opts.neutralize_nouns = cfg.nouns;
  opts.contraction_style = cfg.contractions == "expand"
                               ? gnr::ContractionStyle::EXPAND
                               : gnr::ContractionStyle::PRESERVE;
  if (!cfg.titles_path.empty()) opts.title_map = load_title_map(cfg.titles_path);
  return opts;
}

std::optional<gnr::NounLexicon> load_noun_lexicon(const CliConfig& cfg) {
  if (!cfg.nouns) return std::nullopt;
  std::filesystem::path path;
  if (!cfg.lexicon_path.empty()) {
    path = cfg.lexicon_path;
  } else if (const char* env = std::getenv("GNR_NOUN_LEXICON"); env && *env) {
    path = env;
  } else {
    path = gnr::default_data_dir() /
           (cfg.paper_exact ? "nouns_exact.tsv" : "nouns_default.tsv");
  }
  return gnr::NounLexicon::load(path);
}

json edit_to_json(const gnr::Edit& e) {
  json j{{"span", {e.span_begin, e.span_end}},
         {"original", e.original},
         {"replacement", e.replacement},
         {"category", gnr::to_string(e.category)}};
  if (e.noun_category) j["noun_category"] = gnr::to_string(*e.noun_category);
  return j;
}

int run_rewrite(const CliConfig& cfg) {
  const gnr::Tagger tagger = gnr::Tagger::with_default_data();
  const auto nouns = load_noun_lexicon(cfg);
  const gnr::Rewriter rewriter(tagger, make_options(cfg),
                               nouns ? &*nouns : nullptr);

  std::vector<gnr::ConlluSentence> blocks;
  if (!cfg.conllu_path.empty()) blocks = gnr::parse_conllu(cfg.conllu_path);

  std::ifstream in_file;
  std::ofstream out_file;
  std::istream& in = open_input(cfg.input, in_file);
  std::ostream& out = open_output(cfg.output, out_file);

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const gnr::ConlluSentence* ext =
        lineno < blocks.size() ? &blocks[lineno] : nullptr;
    ++lineno;
    const gnr::RewriteResult r = rewriter.rewrite(line, ext);
    if (r.warning) {
      std::cerr << "warning: line " << lineno << ": " << *r.warning << '\n';
    }
    if (cfg.json_output) {
      json j{{"output", r.text()}, {"input_hash", r.input_hash}};
      j["edits"] = json::array();
      for (const auto& e : r.edits) j["edits"].push_back(edit_to_json(e));
      out << j.dump() << '\n';
    } else {
      out << r.text() << '\n';
    }
  }
  if (!cfg.conllu_path.empty() && lineno != blocks.size()) {
    std::cerr << "warning: " << cfg.conllu_path << " has " << blocks.size()
              << " sentence blocks for " << lineno << " input lines\n";
  }
  return 0;
}

int run_eval(const CliConfig& cfg) {
  gnr::EvalOptions opts;
  opts.mode = cfg.mode == "raw" ? gnr::EvalMode::RAW : gnr::EvalMode::TOKENIZED;
  opts.ignore_case = cfg.ignore_case;
  const gnr::EvalReport report = gnr::evaluate(
      cfg.source_file, cfg.hypothesis_file, cfg.reference_file, opts);

  if (cfg.json_output) {
    json counts = json::object();
    for (const auto& [cat, count] : report.error_counts) {
      counts[gnr::to_string(cat)] = count;
    }
    json per = json::array();
    for (const auto& s : report.per_sentence) {
      per.push_back({{"edit_distance", s.edit_distance},
                     {"ref_length", s.ref_length}});
    }
    json j{{"base_wer", report.base_wer},
           {"system_wer", report.system_wer},
           {"base_wer_macro", report.base_wer_macro},
           {"system_wer_macro", report.system_wer_macro},
           {"n", report.sentence_count},
           {"error_counts", counts},
           {"per_sentence", per}};
    std::cout << j.dump() << '\n';
    return 0;
  }
  std::cout << std::fixed << std::setprecision(2);
  std::cout << "sentences       " << report.sentence_count << '\n'
            << "base WER (%)    " << report.base_wer
            << "  (macro " << report.base_wer_macro << ")\n"
            << "system WER (%)  " << report.system_wer
            << "  (macro " << report.system_wer_macro << ")\n";
  if (!report.error_counts.empty()) {
    std::cout << "diff classes:\n";
    for (const auto& [cat, count] : report.error_counts) {
      std::cout << "  " << std::left << std::setw(15) << gnr::to_string(cat)
                << count << '\n';
    }
  }
  return 0;
}

int run_sample(const CliConfig& cfg) {
  std::ifstream in_file;
  std::ofstream out_file;
  std::istream& in = open_input(cfg.input, in_file);
  std::ostream& out = open_output(cfg.output, out_file);

  const gnr::SampleResult result = gnr::balanced_sample(in, cfg.n, cfg.seed);
  for (const auto& line : result.lines) out << line << '\n';
  if (!result.shortfall.empty()) {
    std::cerr << "warning: quota of " << result.quota
              << " lines per form unmet for:";
    for (const auto& f : result.shortfall) std::cerr << ' ' << f;
    std::cerr << '\n';
  }
  if (cfg.json_output) {
    json counts = json::object();
    for (std::size_t f = 0; f < 8; ++f) {
      counts[std::string(gnr::kTargetForms[f])] = result.line_counts[f];
    }
    json j{{"selected", result.lines.size()},
           {"quota", result.quota},
           {"line_counts", counts},
           {"shortfall", result.shortfall}};
    std::cerr << j.dump() << '\n';
  }
  return 0;
}

int run_parallel(const CliConfig& cfg) {
  const gnr::Tagger tagger = gnr::Tagger::with_default_data();
  const auto nouns = load_noun_lexicon(cfg);
  const gnr::Rewriter rewriter(tagger, make_options(cfg),
                               nouns ? &*nouns : nullptr);

  std::ifstream in_file;
  std::istream& in = open_input(cfg.input, in_file);
  std::ofstream src_out(cfg.src_out);
  if (!src_out) throw std::runtime_error("cannot open output file: " + cfg.src_out);
  std::ofstream tgt_out(cfg.tgt_out);
  if (!tgt_out) throw std::runtime_error("cannot open output file: " + cfg.tgt_out);

  const gnr::ParallelStats stats =
      gnr::generate_parallel(in, rewriter, src_out, tgt_out);
  json counts = json::object();
  for (const auto& [cat, count] : stats.edit_counts) {
    counts[gnr::to_string(cat)] = count;
  }
  json j{{"lines", stats.lines},
         {"changed", stats.changed},
         {"edit_counts", counts}};
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gender-neutral rewriting toolkit"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_rewrite_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--nouns", cfg.nouns, "also neutralize gendered nouns");
    cmd->add_option("--lexicon", cfg.lexicon_path, "noun lexicon TSV path");
    cmd->add_flag("--paper-exact", cfg.paper_exact,
                  "use the published word list without normalizations");
    cmd->add_option("--contractions", cfg.contractions,
                    "contraction style for rewritten 's")
        ->check(CLI::IsMember({"preserve", "expand"}));
    cmd->add_option("--titles", cfg.titles_path,
                    "title map TSV (e.g. Mrs<TAB>Mx)");
  };

  CLI::App* rewrite = app.add_subcommand("rewrite", "rewrite sentences");
  rewrite->add_option("input", cfg.input, "input file or - for stdin");
  rewrite->add_option("output", cfg.output, "output file or - for stdout");
  add_rewrite_flags(rewrite);
  rewrite->add_option("--conllu", cfg.conllu_path,
                      "external annotations (CoNLL-U), one block per line");
  rewrite->add_flag("--json", cfg.json_output,
                    "emit JSON lines with edit logs");

  CLI::App* eval = app.add_subcommand("eval", "WER against a reference");
  eval->add_option("source", cfg.source_file, "gendered source file")
      ->required();
  eval->add_option("hypothesis", cfg.hypothesis_file, "system output file")
      ->required();
  eval->add_option("reference", cfg.reference_file, "neutral reference file")
      ->required();
  eval->add_option("--mode", cfg.mode, "token mode for scoring")
      ->check(CLI::IsMember({"tokenized", "raw"}));
  eval->add_flag("--ignore-case", cfg.ignore_case, "case-insensitive scoring");
  eval->add_flag("--json", cfg.json_output, "emit the report as JSON");

  CLI::App* sample = app.add_subcommand("sample", "form-balanced sampling");
  sample->add_option("input", cfg.input, "corpus file or - for stdin");
  sample->add_option("output", cfg.output, "output file or - for stdout");
  sample->add_option("--n", cfg.n, "target sample size")->required();
  sample->add_option("--seed", cfg.seed, "shuffle seed");
  sample->add_flag("--json", cfg.json_output, "emit summary JSON to stderr");

  CLI::App* parallel =
      app.add_subcommand("parallel", "generate a parallel corpus");
  parallel->add_option("input", cfg.input, "corpus file or - for stdin");
  parallel->add_option("src_out", cfg.src_out, "gendered side output")
      ->required();
  parallel->add_option("tgt_out", cfg.tgt_out, "neutral side output")
      ->required();
  add_rewrite_flags(parallel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (rewrite->parsed()) return run_rewrite(cfg);
    if (eval->parsed()) return run_eval(cfg);
    if (sample->parsed()) return run_sample(cfg);
    if (parallel->parsed()) return run_parallel(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
