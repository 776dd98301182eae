#pragma once

// Verb number morphology and case transfer.

#include <string>
#include <string_view>
#include <unordered_map>

#include "gnr/text.hpp"

namespace gnr {

// Transfers the casing pattern of `original` onto `replacement`:
// all-caps -> all-caps, leading capital -> leading capital, else lowercase.
// `replacement` is expected in lowercase.
inline std::string match_case(std::string_view original,
                              std::string_view replacement) {
  std::size_t alpha = 0, upper = 0;
  char first_alpha = 0;
  for (char c : original) {
    if (detail::is_ascii_alpha(static_cast<unsigned char>(c))) {
      if (alpha == 0) first_alpha = c;
      ++alpha;
      if (c >= 'A' && c <= 'Z') ++upper;
    }
  }
  std::string out(replacement);
  if (alpha == 0) return out;
  const bool first_is_upper = first_alpha >= 'A' && first_alpha <= 'Z';
  if (upper == alpha && (alpha > 1 || !detail::is_ascii_alpha(
                                          static_cast<unsigned char>(original[0])))) {
    for (char& c : out)
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    return out;
  }
  if (first_is_upper) {
    for (char& c : out) {
      if (detail::is_ascii_alpha(static_cast<unsigned char>(c))) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        break;
      }
    }
  }
  return out;
}

// 3rd-person-singular finite verb -> plural form. Anything that is not a
// 3sg form (modals, past tense, base forms) comes back unchanged, so the
// function is safe to apply blindly; casing is preserved.
inline std::string pluralize_verb(std::string_view form) {
  static const std::unordered_map<std::string, std::string> irregular = {
      {"is", "are"},          {"was", "were"},      {"has", "have"},
      {"does", "do"},         {"goes", "go"},       {"isn't", "aren't"},
      {"wasn't", "weren't"},  {"hasn't", "haven't"}, {"doesn't", "don't"},
  };
  const std::string low = detail::lower_copy(form);
  if (auto it = irregular.find(low); it != irregular.end()) {
    return match_case(form, it->second);
  }
  if (low.empty() || low.front() == '\'') return std::string(form);
  if (low.size() < 2 || low.back() != 's' || detail::iends_with(low, "ss")) {
    return std::string(form);
  }
  std::string stem;
  if (low.size() >= 4 && detail::iends_with(low, "ies")) {
    stem = low.substr(0, low.size() - 3) + "y";  // carries -> carry
  } else if (detail::iends_with(low, "es")) {
    const std::string_view before = std::string_view(low).substr(0, low.size() - 2);
    if (detail::iends_with(before, "s") || detail::iends_with(before, "x") ||
        detail::iends_with(before, "z") || detail::iends_with(before, "ch") ||
        detail::iends_with(before, "sh")) {
      stem = std::string(before);  // watches -> watch
    } else {
      stem = low.substr(0, low.size() - 1);  // sees -> see
    }
  } else {
    stem = low.substr(0, low.size() - 1);  // works -> work
  }
  return match_case(form, stem);
}

}  // namespace gnr
