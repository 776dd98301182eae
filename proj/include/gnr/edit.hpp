#pragma once

// Typed edit log entries. Spans index tokens of the input sentence;
// categories mirror the error classes used for reporting.

#include <optional>
#include <string>
#include <vector>

#include "gnr/text.hpp"

namespace gnr {

enum class NounCategory;

enum class EditCategory {
  PRONOUN,
  DETERMINER,
  REFLEXIVE,
  CLITIC,
  VERB_AGREEMENT,
  NOUN,
  TITLE,
};

inline const char* to_string(EditCategory c) {
  switch (c) {
    case EditCategory::PRONOUN: return "PRONOUN";
    case EditCategory::DETERMINER: return "DETERMINER";
    case EditCategory::REFLEXIVE: return "REFLEXIVE";
    case EditCategory::CLITIC: return "CLITIC";
    case EditCategory::VERB_AGREEMENT: return "VERB_AGREEMENT";
    case EditCategory::NOUN: return "NOUN";
    case EditCategory::TITLE: return "TITLE";
  }
  return "PRONOUN";
}

struct Edit {
  std::size_t span_begin = 0;  // [span_begin, span_end) token indices
  std::size_t span_end = 0;
  std::string original;     // source surfaces joined by single spaces
  std::string replacement;  // replacement words joined by single spaces
  EditCategory category = EditCategory::PRONOUN;
  std::optional<NounCategory> noun_category;
};

// Rebuilds the output text by replaying edits over the input sentence.
// Replacement words inherit the span's original leading whitespace on the
// first word and get single spaces between the rest; a replacement that
// drops a clitic's apostrophe is set off by one space so expansion of
// "he's" yields "they are".
inline std::string apply_edits(const Sentence& input,
                               const std::vector<Edit>& edits) {
  std::string out;
  out.reserve(input.source_text.size() + 16);
  std::size_t i = 0;
  auto next_edit = edits.begin();
  while (i < input.tokens.size()) {
    while (next_edit != edits.end() && next_edit->span_end <= i) ++next_edit;
    if (next_edit != edits.end() && next_edit->span_begin == i) {
      const Token& first = input.tokens[i];
      std::string lw = first.leading_whitespace;
      if (lw.empty() && !first.surface.empty() && first.surface[0] == '\'' &&
          !next_edit->replacement.empty() &&
          next_edit->replacement[0] != '\'') {
        lw = " ";
      }
      out += lw;
      out += next_edit->replacement;  // already carries single internal spaces
      i = next_edit->span_end;
      ++next_edit;
      continue;
    }
    out += input.tokens[i].leading_whitespace;
    out += input.tokens[i].surface;
    ++i;
  }
  out += input.trailing_whitespace;
  return out;
}

}  // namespace gnr
