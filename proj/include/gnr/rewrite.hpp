#pragma once

// The sentence rewriter: applies the pronoun/determiner mapping with case
// preservation, remaps or expands 's clitics after he/she, fixes
// subject-verb agreement for the rewritten nominatives, and optionally
// neutralizes gendered nouns and titles.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "gnr/conllu.hpp"
#include "gnr/edit.hpp"
#include "gnr/morphology.hpp"
#include "gnr/nouns.hpp"
#include "gnr/pronouns.hpp"
#include "gnr/tagger.hpp"
#include "gnr/text.hpp"

namespace gnr {

struct RewriteOptions {
  bool neutralize_nouns = false;
  ContractionStyle contraction_style = ContractionStyle::PRESERVE;
  // Mapping for titles such as Mrs/Miss; empty means titles are untouched.
  std::map<std::string, std::string> title_map;
};

struct RewriteResult {
  Sentence output;
  std::vector<Edit> edits;
  std::uint64_t input_hash = 0;
  AnnotationSource annotation_source = AnnotationSource::BUILTIN;
  // Set when external annotations were requested but could not be aligned.
  std::optional<std::string> warning;

  std::string text() const { return detokenize(output); }
  bool changed() const { return !edits.empty(); }
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Rewriter {
 public:
  Rewriter(const Tagger& tagger, RewriteOptions opts = {},
           const NounLexicon* nouns = nullptr)
      : tagger_(tagger), opts_(std::move(opts)), nouns_(nouns) {}

  const RewriteOptions& options() const { return opts_; }

  RewriteResult rewrite(std::string_view text,
                        const ConlluSentence* external = nullptr) const {
    const Sentence input = tokenize(text);
    AnnotatedSentence ann;
    RewriteResult result;
    result.input_hash = fnv1a64(text);
    if (external) {
      if (auto aligned = align_external(*external, input)) {
        ann = std::move(*aligned);
        result.annotation_source = AnnotationSource::EXTERNAL;
      } else {
        ann = tagger_.annotate(input);
        result.warning = "external annotation token count (" +
                         std::to_string(external->tokens.size()) +
                         ") does not match tokenization (" +
                         std::to_string(input.tokens.size()) +
                         "); using builtin tagger";
      }
    } else {
      ann = tagger_.annotate(input);
    }

    std::vector<Edit> edits;
    std::vector<bool> edited(input.tokens.size(), false);
    auto add_edit = [&](Edit e) {
      for (std::size_t k = e.span_begin; k < e.span_end; ++k) edited[k] = true;
      edits.push_back(std::move(e));
    };
    auto token_edit = [&](std::size_t i, std::string replacement,
                          EditCategory cat) {
      Edit e;
      e.span_begin = i;
      e.span_end = i + 1;
      e.original = input.tokens[i].surface;
      e.replacement = std::move(replacement);
      e.category = cat;
      add_edit(std::move(e));
    };

    // Pronouns and determiners.
    std::vector<std::size_t> nominatives;
    for (std::size_t i = 0; i < input.tokens.size(); ++i) {
      const std::string& surface = input.tokens[i].surface;
      const std::string low = detail::lower_copy(surface);
      if (!is_target_form(low)) continue;
      std::string repl;
      EditCategory cat = EditCategory::PRONOUN;
      if (low == "he" || low == "she") {
        repl = map_pronoun(surface, GrammaticalRole::NOMINATIVE);
        nominatives.push_back(i);
      } else if (low == "him") {
        repl = map_pronoun(surface, GrammaticalRole::OBJECTIVE);
      } else if (low == "hers") {
        repl = map_pronoun(surface, GrammaticalRole::INDEPENDENT_POSSESSIVE);
      } else if (low == "himself" || low == "herself") {
        repl = map_pronoun(surface, GrammaticalRole::REFLEXIVE);
        cat = EditCategory::REFLEXIVE;
      } else if (low == "her") {
        if (tagger_.classify_her(ann, i) == HerRole::POSSESSIVE_DET) {
          repl = map_pronoun(surface, GrammaticalRole::POSSESSIVE_DET);
          cat = EditCategory::DETERMINER;
        } else {
          repl = map_pronoun(surface, GrammaticalRole::OBJECTIVE);
        }
      } else {  // his
        if (tagger_.classify_his(ann, i) == HisRole::POSSESSIVE_DET) {
          repl = map_pronoun(surface, GrammaticalRole::POSSESSIVE_DET);
          cat = EditCategory::DETERMINER;
        } else {
          repl = map_pronoun(surface, GrammaticalRole::INDEPENDENT_POSSESSIVE);
        }
      }
      token_edit(i, match_case(surface, repl), cat);
    }

    // Clitics after rewritten he/she.
    for (std::size_t subj : nominatives) {
      const std::size_t j = subj + 1;
      if (j >= input.tokens.size() || edited[j]) continue;
      if (!detail::iequals(input.tokens[j].surface, "'s")) continue;
      const CliticRole role = tagger_.classify_clitic_s(ann, j);
      if (role == CliticRole::POSSESSIVE) continue;  // host check said no
      const std::string repl =
          map_clitic("they", role, opts_.contraction_style);
      token_edit(j, match_case(input.tokens[j].surface, repl),
                 EditCategory::CLITIC);
    }

    // Subject-verb agreement for every rewritten nominative.
    for (std::size_t subj : nominatives) {
      fix_agreement(ann, subj, edited, edits);
    }

    // Optional noun neutralization, skipping anything already edited.
    if (opts_.neutralize_nouns && nouns_) {
      for (Edit& e : neutralize_nouns(input, *nouns_)) {
        bool overlap = false;
        for (std::size_t k = e.span_begin; k < e.span_end; ++k) {
          overlap = overlap || edited[k];
        }
        if (!overlap) add_edit(std::move(e));
      }
    }

    // Optional title rewriting (Mrs, Miss, ...).
    if (!opts_.title_map.empty()) {
      for (std::size_t i = 0; i < input.tokens.size(); ++i) {
        if (edited[i]) continue;
        const std::string low = detail::lower_copy(input.tokens[i].surface);
        if (auto it = opts_.title_map.find(low); it != opts_.title_map.end()) {
          token_edit(i, match_case(input.tokens[i].surface, it->second),
                     EditCategory::TITLE);
        }
      }
    }

    std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
      return a.span_begin < b.span_begin;
    });
    result.edits = std::move(edits);
    result.output = build_output(input, result.edits);
    return result;
  }

  // Agreement edits for one rewritten nominative subject.
  std::vector<Edit> fix_agreement(const AnnotatedSentence& ann,
                                  std::size_t subject) const {
    std::vector<Edit> edits;
    std::vector<bool> edited(ann.size(), false);
    fix_agreement(ann, subject, edited, edits);
    return edits;
  }

  // Pluralizes the nearest finite verb governed by the rewritten subject,
  // plus any verbs conjoined to it; clauses introduced by a relativizer or
  // subordinator keep their own agreement.
  void fix_agreement(const AnnotatedSentence& ann, std::size_t subject,
                     std::vector<bool>& edited, std::vector<Edit>& edits) const {
    const Sentence& s = ann.sentence;
    auto emit = [&](std::size_t i) {
      const std::string& surface = s.tokens[i].surface;
      const std::string plural = pluralize_verb(surface);
      if (plural == surface || edited[i]) return;
      Edit e;
      e.span_begin = i;
      e.span_end = i + 1;
      e.original = surface;
      e.replacement = plural;
      e.category = EditCategory::VERB_AGREEMENT;
      for (std::size_t k = e.span_begin; k < e.span_end; ++k) edited[k] = true;
      edits.push_back(std::move(e));
    };

    std::size_t j = subject + 1;
    while (j < s.tokens.size()) {
      const std::string low = detail::lower_copy(s.tokens[j].surface);
      if (is_clause_opener(low)) {
        j = skip_clause(ann, j);
        continue;
      }
      const Pos tag = ann.pos(j);
      if (is_finite(tag)) {
        emit(j);
        follow_conjoined(ann, j, emit);
        follow_external_conj(ann, j, emit);
        return;
      }
      if (tag == Pos::PUNCT && low != ",") return;
      ++j;
    }
  }

 private:
  const Tagger& tagger_;
  RewriteOptions opts_;
  const NounLexicon* nouns_;

  static bool is_finite(Pos tag) {
    return tag == Pos::VERB_FIN_3SG || tag == Pos::VERB_FIN_PL ||
           tag == Pos::VERB_PAST || tag == Pos::MODAL;
  }

  static bool is_clause_opener(const std::string& low) {
    return low == "that" || low == "who" || low == "which" || low == "whom" ||
           low == "whose" || low == "because" || low == "if" || low == "when" ||
           low == "while" || low == "although" || low == "though" ||
           low == "since" || low == "unless" || low == "whereas";
  }

  // Skips past the finite verb of an embedded clause; the clause's own
  // subject keeps that verb's agreement.
  static std::size_t skip_clause(const AnnotatedSentence& ann, std::size_t open) {
    std::size_t j = open + 1;
    while (j < ann.size()) {
      const Pos tag = ann.pos(j);
      if (is_finite(tag)) return j + 1;
      if (tag == Pos::PUNCT && ann.token(j).surface != ",") return j;
      ++j;
    }
    return j;
  }

  // Extends an agreement fix across "and/or/comma" verb chains within the
  // clause: a finite verb directly after a link (modulo adverbs) shares the
  // rewritten subject; anything else after the link starts its own conjunct.
  template <typename EmitFn>
  static void follow_conjoined(const AnnotatedSentence& ann, std::size_t verb,
                               EmitFn&& emit) {
    std::size_t j = verb + 1;
    while (j < ann.size()) {
      const std::string low = detail::lower_copy(ann.token(j).surface);
      const Pos tag = ann.pos(j);
      if (is_clause_opener(low)) return;
      if (tag == Pos::PUNCT && low != ",") return;
      if (low == "," || low == "and" || low == "or" || low == "nor") {
        std::size_t k = j + 1;
        while (k < ann.size() && ann.pos(k) == Pos::ADV) ++k;
        if (k < ann.size() && is_finite(ann.pos(k))) {
          emit(k);
          j = k + 1;
          continue;
        }
      }
      ++j;
    }
  }

  // With external annotations, a finite verb whose conj head is the found
  // verb shares the subject regardless of surface shape ("carries the box
  // and watches TV").
  template <typename EmitFn>
  static void follow_external_conj(const AnnotatedSentence& ann,
                                   std::size_t verb, EmitFn&& emit) {
    if (ann.source != AnnotationSource::EXTERNAL) return;
    for (std::size_t j = verb + 1; j < ann.size(); ++j) {
      if (ann.annotations[j].relation == Relation::CONJ &&
          ann.annotations[j].head == verb && is_finite(ann.pos(j))) {
        emit(j);
      }
    }
  }

  static Sentence build_output(const Sentence& input,
                               const std::vector<Edit>& edits) {
    Sentence out;
    out.trailing_whitespace = input.trailing_whitespace;
    auto next_edit = edits.begin();
    std::size_t i = 0;
    auto push = [&](std::string surface, std::string lw) {
      Token t;
      t.surface = std::move(surface);
      t.leading_whitespace = std::move(lw);
      t.index = out.tokens.size();
      out.tokens.push_back(std::move(t));
    };
    while (i < input.tokens.size()) {
      if (next_edit != edits.end() && next_edit->span_begin == i) {
        const Token& first = input.tokens[i];
        std::string lw = first.leading_whitespace;
        if (lw.empty() && !first.surface.empty() && first.surface[0] == '\'' &&
            !next_edit->replacement.empty() &&
            next_edit->replacement[0] != '\'') {
          lw = " ";  // expanded clitic needs separation from its host
        }
        std::size_t start = 0;
        bool first_word = true;
        const std::string& repl = next_edit->replacement;
        while (start <= repl.size()) {
          const auto sp = repl.find(' ', start);
          push(repl.substr(start, sp - start), first_word ? lw : " ");
          first_word = false;
          if (sp == std::string::npos) break;
          start = sp + 1;
        }
        i = next_edit->span_end;
        ++next_edit;
        continue;
      }
      push(input.tokens[i].surface, input.tokens[i].leading_whitespace);
      ++i;
    }
    out.source_text = detokenize(out);
    return out;
  }
};

// Streaming driver: reads newline-delimited text, invokes `fn(line_number,
// result)` per line, and never buffers more than one line.
template <typename ResultFn>
inline void rewrite_lines(std::istream& in, const Rewriter& rewriter,
                          ResultFn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    fn(++lineno, rewriter.rewrite(line));
  }
}

}  // namespace gnr
