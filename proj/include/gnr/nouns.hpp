#pragma once

// Lexicon-driven replacement of gendered nouns: job titles, unnecessary
// feminine forms, and generic "man" constructions. Matching is token-based,
// case-insensitive, longest match first, so substrings inside longer words
// never fire.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "gnr/edit.hpp"
#include "gnr/morphology.hpp"
#include "gnr/text.hpp"

namespace gnr {

enum class NounCategory { JOB_TITLE, FEMININE_FORM, GENERIC_MAN };

inline const char* to_string(NounCategory c) {
  switch (c) {
    case NounCategory::JOB_TITLE: return "JOB_TITLE";
    case NounCategory::FEMININE_FORM: return "FEMININE_FORM";
    case NounCategory::GENERIC_MAN: return "GENERIC_MAN";
  }
  return "JOB_TITLE";
}

struct NounEntry {
  std::string source;                       // lowercase, single-spaced
  std::vector<std::string> source_tokens;   // tokenized form used to match
  std::string target;
  std::vector<std::string> target_words;
  NounCategory category;
};

class NounLexicon {
 public:
  // Rows are source<TAB>target<TAB>category; '#' lines and blanks are
  // ignored. Duplicate sources and malformed rows are load errors.
  static NounLexicon load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open noun lexicon: " + path.string());
    NounLexicon lex;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
      if (t1 == std::string::npos || t2 == std::string::npos ||
          line.find('\t', t2 + 1) != std::string::npos) {
        throw std::runtime_error("malformed noun lexicon row at " +
                                 path.string() + ":" + std::to_string(lineno));
      }
      NounEntry e;
      e.source = detail::lower_copy(line.substr(0, t1));
      e.target = detail::lower_copy(line.substr(t1 + 1, t2 - t1 - 1));
      const std::string cat = line.substr(t2 + 1);
      if (cat == "JOB_TITLE") {
        e.category = NounCategory::JOB_TITLE;
      } else if (cat == "FEMININE_FORM") {
        e.category = NounCategory::FEMININE_FORM;
      } else if (cat == "GENERIC_MAN") {
        e.category = NounCategory::GENERIC_MAN;
      } else {
        throw std::runtime_error("unknown noun category at " + path.string() +
                                 ":" + std::to_string(lineno));
      }
      if (e.source.empty() || e.target.empty()) {
        throw std::runtime_error("malformed noun lexicon row at " +
                                 path.string() + ":" + std::to_string(lineno));
      }
      if (!seen.insert(e.source).second) {
        throw std::runtime_error("duplicate noun lexicon source '" + e.source +
                                 "' at " + path.string() + ":" +
                                 std::to_string(lineno));
      }
      for (const Token& t : tokenize(e.source).tokens) {
        e.source_tokens.push_back(t.surface);
      }
      if (e.source_tokens.empty() || e.source_tokens.size() > 5) {
        throw std::runtime_error("noun lexicon source must span 1-5 tokens at " +
                                 path.string() + ":" + std::to_string(lineno));
      }
      split_words(e.target, e.target_words);
      lex.entries_.push_back(std::move(e));
    }
    // Longest token span first so longer phrases win all overlaps.
    std::stable_sort(lex.entries_.begin(), lex.entries_.end(),
                     [](const NounEntry& a, const NounEntry& b) {
                       return a.source_tokens.size() > b.source_tokens.size();
                     });
    return lex;
  }

  const std::vector<NounEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Longest entry matching the token sequence starting at `pos`, if any.
  const NounEntry* match_at(const Sentence& s, std::size_t pos) const {
    for (const NounEntry& e : entries_) {
      const std::size_t len = e.source_tokens.size();
      if (pos + len > s.tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < len; ++k) {
        if (!detail::iequals(s.tokens[pos + k].surface, e.source_tokens[k])) {
          ok = false;
          break;
        }
      }
      if (ok) return &e;
    }
    return nullptr;
  }

 private:
  std::vector<NounEntry> entries_;

  static void split_words(const std::string& text, std::vector<std::string>& out) {
    std::size_t start = 0;
    while (start < text.size()) {
      const auto sp = text.find(' ', start);
      out.push_back(text.substr(start, sp - start));
      if (sp == std::string::npos) break;
      start = sp + 1;
    }
  }
};

// Left-to-right longest-match scan. Replacements are case-matched on the
// first word; Edit spans cover the matched tokens.
inline std::vector<Edit> neutralize_nouns(const Sentence& s,
                                          const NounLexicon& lex) {
  std::vector<Edit> edits;
  std::size_t i = 0;
  while (i < s.tokens.size()) {
    const NounEntry* e = lex.match_at(s, i);
    if (!e) {
      ++i;
      continue;
    }
    const std::size_t len = e->source_tokens.size();
    Edit ed;
    ed.span_begin = i;
    ed.span_end = i + len;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) ed.original += ' ';
      ed.original += s.tokens[i + k].surface;
    }
    for (std::size_t k = 0; k < e->target_words.size(); ++k) {
      if (k) ed.replacement += ' ';
      ed.replacement += k == 0 ? match_case(s.tokens[i].surface,
                                            e->target_words[0])
                               : e->target_words[k];
    }
    ed.category = EditCategory::NOUN;
    ed.noun_category = e->category;
    edits.push_back(std::move(ed));
    i += len;
  }
  return edits;
}

}  // namespace gnr
