// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criterion 6 needs external benchmark files and prints
// SKIP when they are not configured (GNR_WINOBIAS_SRC / GNR_WINOBIAS_REF,
// optionally GNR_WINOBIAS_HYP).

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gnr/corpus.hpp"
#include "gnr/morphology.hpp"
#include "gnr/nouns.hpp"
#include "gnr/pronouns.hpp"
#include "gnr/rewrite.hpp"
#include "gnr/wer.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using Tokens = std::vector<std::string>;

int failures = 0;

void report(int criterion, const char* name, bool pass,
            const std::string& detail = "") {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << '\n';
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const gnr::Tagger& tagger() {
  static const gnr::Tagger t = gnr::Tagger::with_default_data();
  return t;
}

// ---- criterion 1: worked examples ----------------------------------

struct Example {
  std::string input;
  std::string expected;
};

void criterion_1() {
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  std::ostringstream why;
  auto expect = [&](const std::string& got, const std::string& want,
                    const std::string& label) {
    if (got != want) {
      ++mismatches;
      why << " [" << label << ": got '" << got << "' want '" << want << "']";
    }
  };

  // Pronoun/determiner mapping table, all eight forms.
  using Role = gnr::GrammaticalRole;
  expect(gnr::map_pronoun("he", Role::NOMINATIVE), "they", "he");
  expect(gnr::map_pronoun("she", Role::NOMINATIVE), "they", "she");
  expect(gnr::map_pronoun("him", Role::OBJECTIVE), "them", "him");
  expect(gnr::map_pronoun("her", Role::OBJECTIVE), "them", "her-obj");
  expect(gnr::map_pronoun("her", Role::POSSESSIVE_DET), "their", "her-det");
  expect(gnr::map_pronoun("his", Role::POSSESSIVE_DET), "their", "his-det");
  expect(gnr::map_pronoun("his", Role::INDEPENDENT_POSSESSIVE), "theirs",
         "his-indep");
  expect(gnr::map_pronoun("hers", Role::INDEPENDENT_POSSESSIVE), "theirs",
         "hers");
  expect(gnr::map_pronoun("himself", Role::REFLEXIVE), "themselves", "himself");
  expect(gnr::map_pronoun("herself", Role::REFLEXIVE), "themselves", "herself");

  // Agreement pairs.
  expect(gnr::pluralize_verb("works"), "work", "works");
  expect(gnr::pluralize_verb("has"), "have", "has");
  expect(gnr::pluralize_verb("is"), "are", "is");

  // Full-sentence rewrites.
  const gnr::Rewriter rw(tagger());
  const std::vector<Example> sentences = {
      {"He opened the door.", "They opened the door."},
      {"She works in a company.", "They work in a company."},
      {"I gave it to her.", "I gave it to them."},
      {"It is her book.", "It is their book."},
      {"It is his book.", "It is their book."},
      {"The book is his.", "The book is theirs."},
  };
  for (const auto& ex : sentences) {
    expect(rw.rewrite(ex.input).text(), ex.expected, ex.input);
  }

  // 's as "has", expanded style.
  gnr::RewriteOptions expand;
  expand.contraction_style = gnr::ContractionStyle::EXPAND;
  const gnr::Rewriter rw_expand(tagger(), expand);
  expect(rw_expand.rewrite("He's worked.").text(), "They have worked.",
         "he's-worked");

  // Noun entries spanning the three wordlist categories.
  const gnr::NounLexicon lex =
      gnr::NounLexicon::load(gnr::default_data_dir() / "nouns_default.tsv");
  gnr::RewriteOptions with_nouns;
  with_nouns.neutralize_nouns = true;
  const gnr::Rewriter rw_nouns(tagger(), with_nouns, &lex);
  const std::vector<Example> nouns = {
      {"The chairman spoke.", "The chairperson spoke."},
      {"The chairmen spoke.", "The chairpeople spoke."},
      {"A businesswoman arrived.", "A business person arrived."},
      {"The policewomen left.", "The police officers left."},
      {"The stewardess smiled.", "The flight attendant smiled."},
      {"Two actresses arrived.", "Two actors arrived."},
      {"The waitress nodded.", "The waiter nodded."},
      {"My heroine won.", "My hero won."},
      {"He is the best man for the job.",
       "They are the best person for the job."},
      {"a man-made lake", "a human-made lake"},
      {"mankind endures", "humankind endures"},
      {"The freshman left.", "The first-year student left."},
  };
  for (const auto& ex : nouns) {
    expect(rw_nouns.rewrite(ex.input).text(), ex.expected, ex.input);
  }

  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << mismatches << " mismatches" << why.str() << ", "
         << elapsed << "s";
  report(1, "worked-example suite", mismatches == 0 && elapsed < 1.0,
         detail.str());
}

// ---- criterion 2: WER oracle equivalence ----------------------------------

std::size_t oracle_distance(const Tokens& a, const Tokens& b) {
  std::vector<std::vector<long>> memo(a.size() + 1,
                                      std::vector<long>(b.size() + 1, -1));
  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    if (memo[i][j] >= 0) return static_cast<std::size_t>(memo[i][j]);
    const std::size_t best =
        std::min({self(self, i - 1, j) + 1, self(self, i, j - 1) + 1,
                  self(self, i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
    memo[i][j] = static_cast<long>(best);
    return best;
  };
  return rec(rec, a.size(), b.size());
}

void criterion_2() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240812);
  auto rand_tokens = [&](std::size_t max_len) {
    Tokens out;
    const std::size_t n = rng() % (max_len + 1);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(std::string(1, static_cast<char>('a' + rng() % 5)));
    }
    return out;
  };
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const Tokens a = rand_tokens(12), b = rand_tokens(12);
    if (gnr::edit_distance(a, b) != oracle_distance(a, b)) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "1000 pairs, " << mismatches << " mismatches, " << elapsed << "s";
  report(2, "WER oracle equivalence", mismatches == 0 && elapsed < 5.0,
         detail.str());
}

// ---- criterion 3: idempotence + pronoun elimination -----------------------

std::string fuzz_sentence(std::mt19937_64& rng) {
  static const std::vector<std::string> subjects = {
      "He", "She", "he", "she", "HE", "SHE"};
  static const std::vector<std::string> objects = {
      "her", "him", "his", "hers", "himself", "herself",
      "Her", "HIM", "HIS", "HERS", "HIMSELF", "HERSELF"};
  static const std::vector<std::string> verbs = {
      "works", "is", "has", "goes", "was", "likes", "carries",
      "watches", "worked", "ran", "sleeps", "does"};
  static const std::vector<std::string> clitics = {
      "'s happy", "'s gone home", "'s worked hard", "'s a doctor",
      "'s been there", "'ll go", "'d left", "'s running"};
  static const std::vector<std::string> tails = {
      "in a company", "yesterday", "with the editor", "for the job",
      "to the door", "", "very much"};

  std::ostringstream out;
  const auto& subj = subjects[rng() % subjects.size()];
  out << subj;
  switch (rng() % 4) {
    case 0:  // subject + finite verb (+ coordination)
      out << ' ' << verbs[rng() % verbs.size()];
      if (rng() % 3 == 0) out << " and " << verbs[rng() % verbs.size()];
      break;
    case 1:  // subject + clitic
      out << clitics[rng() % clitics.size()];
      break;
    case 2:  // transitive with a gendered object
      out << ' ' << verbs[rng() % verbs.size()] << ' '
          << objects[rng() % objects.size()];
      break;
    default:  // two clauses
      out << ' ' << verbs[rng() % verbs.size()] << " because "
          << subjects[rng() % subjects.size()] << ' '
          << verbs[rng() % verbs.size()];
      break;
  }
  const auto& tail = tails[rng() % tails.size()];
  if (!tail.empty()) out << ' ' << tail;
  out << (rng() % 5 == 0 ? " ." : ".");
  return out.str();
}

void criterion_3() {
  const auto start = Clock::now();
  const gnr::Rewriter rw(tagger());
  std::mt19937_64 rng(424242);
  std::size_t bad = 0;
  std::string first_bad;
  for (int i = 0; i < 10000; ++i) {
    const std::string input = fuzz_sentence(rng);
    const gnr::RewriteResult once = rw.rewrite(input);
    bool ok = true;
    for (const gnr::Token& t : once.output.tokens) {
      if (gnr::is_target_form(gnr::detail::lower_copy(t.surface))) ok = false;
    }
    const gnr::RewriteResult twice = rw.rewrite(once.text());
    if (!twice.edits.empty() || twice.text() != once.text()) ok = false;
    if (!ok) {
      ++bad;
      if (first_bad.empty()) first_bad = input + " -> " + once.text();
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "10000 sentences, " << bad << " violations";
  if (!first_bad.empty()) detail << ", first: " << first_bad;
  detail << ", " << elapsed << "s";
  report(3, "idempotence + pronoun elimination", bad == 0, detail.str());
}

// ---- criterion 4: tokenizer round trip ------------------------------------

std::string random_utf8(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "a",  "Q",  "7",  " ",  "  ", "\t", "\n", "'", "-", ".", ",", "!",
      "?",  "(",  ")",  "\"", ";",  ":",  "he", "she's", "don't", "o'clock",
      "man-made", "3.5", "é", "ü", "ß", "Նա", "中文", "日本語", "😀", "🙈",
      " ", " ", "　", "…", "—", "’", "“", "”", "´", "`"};
  std::string out;
  const std::size_t n = rng() % 60;
  for (std::size_t i = 0; i < n; ++i) out += pieces[rng() % pieces.size()];
  return out;
}

void criterion_4() {
  const auto start = Clock::now();
  std::mt19937_64 rng(31337);
  std::size_t bad = 0;
  std::string first_bad;
  for (int i = 0; i < 10000; ++i) {
    const std::string text = random_utf8(rng);
    if (gnr::detokenize(gnr::tokenize(text)) != text) {
      ++bad;
      if (first_bad.empty()) first_bad = text;
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "10000 strings, " << bad << " violations";
  if (!first_bad.empty()) detail << ", first: '" << first_bad << "'";
  detail << ", " << elapsed << "s";
  report(4, "tokenizer round trip", bad == 0, detail.str());
}

// ---- criterion 5: balanced sampler ----------------------------------------

void criterion_5() {
  std::mt19937_64 rng(555);
  std::ostringstream corpus;
  for (int i = 0; i < 10000; ++i) {
    corpus << "line " << i;
    const std::size_t picks = 1 + rng() % 3;
    for (std::size_t k = 0; k < picks; ++k) {
      corpus << ' ' << gnr::kTargetForms[rng() % 8];
    }
    corpus << " filler .\n";
  }
  const std::string text = corpus.str();

  bool ok = true;
  std::ostringstream detail;
  for (const std::size_t n : {std::size_t{80}, std::size_t{800}}) {
    std::istringstream in1(text), in2(text);
    const auto run1 = gnr::balanced_sample(in1, n, 777);
    const auto run2 = gnr::balanced_sample(in2, n, 777);
    const std::size_t quota = (n + 7) / 8;
    std::array<std::size_t, 8> recount{};
    for (const auto& line : run1.lines) {
      const gnr::FormCensus c = gnr::count_forms(gnr::tokenize(line));
      for (std::size_t f = 0; f < 8; ++f) {
        if (c[f] > 0) ++recount[f];
      }
    }
    for (std::size_t f = 0; f < 8; ++f) {
      if (recount[f] < quota) {
        ok = false;
        detail << " [n=" << n << " " << gnr::kTargetForms[f] << "="
               << recount[f] << "<" << quota << "]";
      }
    }
    if (run1.lines != run2.lines) {
      ok = false;
      detail << " [n=" << n << " not deterministic]";
    }
    detail << " n=" << n << ":" << run1.lines.size() << " lines";
  }
  report(5, "balanced sampler quotas + determinism", ok, detail.str());
}

// ---- criterion 6: benchmark reproduction (conditional) --------------------

void criterion_6() {
  const char* src = std::getenv("GNR_WINOBIAS_SRC");
  const char* ref = std::getenv("GNR_WINOBIAS_REF");
  if (!src || !*src || !ref || !*ref) {
    std::cout << "SKIP criterion 6: benchmark reproduction "
                 "(set GNR_WINOBIAS_SRC and GNR_WINOBIAS_REF)\n";
    return;
  }
  try {
    const char* hyp_env = std::getenv("GNR_WINOBIAS_HYP");
    std::filesystem::path hyp_path;
    if (hyp_env && *hyp_env) {
      hyp_path = hyp_env;
    } else {
      // Produce the system output with the rewriter itself.
      hyp_path = std::filesystem::temp_directory_path() / "gnr_wb_hyp.txt";
      const gnr::Rewriter rw(tagger());
      std::ifstream in(src);
      std::ofstream out(hyp_path);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out << rw.rewrite(line).text() << '\n';
      }
    }
    const gnr::EvalReport report_data = gnr::evaluate(src, hyp_path, ref);
    const bool base_ok = std::abs(report_data.base_wer - 8.76) <= 0.5;
    const bool sys_ok = report_data.system_wer <= 1.0;
    std::ostringstream detail;
    detail << "base_wer=" << report_data.base_wer
           << " (want 8.76±0.5), system_wer=" << report_data.system_wer
           << " (want <=1.0)";
    report(6, "benchmark reproduction", base_ok && sys_ok, detail.str());
  } catch (const std::exception& e) {
    report(6, "benchmark reproduction", false, e.what());
  }
}

// ---- criterion 7: parallel generation integrity ----------------------------

void criterion_7() {
  const gnr::Rewriter rw(tagger());
  std::mt19937_64 rng(9001);
  std::ostringstream corpus;
  for (int i = 0; i < 1000; ++i) corpus << fuzz_sentence(rng) << '\n';
  std::istringstream in(corpus.str());
  std::ostringstream src, tgt;
  const auto stats = gnr::generate_parallel(in, rw, src, tgt);

  std::vector<std::string> src_lines, tgt_lines;
  {
    std::istringstream s(src.str()), t(tgt.str());
    std::string line;
    while (std::getline(s, line)) src_lines.push_back(line);
    while (std::getline(t, line)) tgt_lines.push_back(line);
  }
  bool ok = stats.lines == 1000 && src_lines.size() == 1000 &&
            tgt_lines.size() == 1000;
  std::size_t audited = 0, audit_bad = 0;
  if (ok) {
    for (int k = 0; k < 100; ++k) {
      const std::size_t i = rng() % 1000;
      ++audited;
      if (rw.rewrite(src_lines[i]).text() != tgt_lines[i]) ++audit_bad;
    }
    ok = audit_bad == 0;
  }
  std::ostringstream detail;
  detail << src_lines.size() << "/" << tgt_lines.size() << " lines, audited "
         << audited << ", mismatches " << audit_bad;
  report(7, "parallel generation integrity", ok, detail.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
