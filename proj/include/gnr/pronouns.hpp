#pragma once

// The binary-form pronoun/determiner mapping and clitic replacements.

#include <stdexcept>
#include <string>
#include <string_view>

#include "gnr/tags.hpp"

namespace gnr {

enum class GrammaticalRole {
  NOMINATIVE,
  OBJECTIVE,
  POSSESSIVE_DET,
  INDEPENDENT_POSSESSIVE,
  REFLEXIVE,
};

enum class ContractionStyle { PRESERVE, EXPAND };

inline bool is_target_form(std::string_view lowercase_surface) {
  return lowercase_surface == "he" || lowercase_surface == "she" ||
         lowercase_surface == "her" || lowercase_surface == "hers" ||
         lowercase_surface == "his" || lowercase_surface == "him" ||
         lowercase_surface == "himself" || lowercase_surface == "herself";
}

// Lowercase neutral replacement for a binary target form in a resolved
// grammatical role. Reflexives map to "themselves", never "themself".
inline std::string map_pronoun(std::string_view surface, GrammaticalRole role) {
  const std::string low = detail::lower_copy(surface);
  if (low == "he" || low == "she") {
    if (role == GrammaticalRole::NOMINATIVE) return "they";
  } else if (low == "him") {
    if (role == GrammaticalRole::OBJECTIVE) return "them";
  } else if (low == "her") {
    if (role == GrammaticalRole::OBJECTIVE) return "them";
    if (role == GrammaticalRole::POSSESSIVE_DET) return "their";
  } else if (low == "his") {
    if (role == GrammaticalRole::POSSESSIVE_DET) return "their";
    if (role == GrammaticalRole::INDEPENDENT_POSSESSIVE) return "theirs";
  } else if (low == "hers") {
    if (role == GrammaticalRole::INDEPENDENT_POSSESSIVE) return "theirs";
  } else if (low == "himself" || low == "herself") {
    if (role == GrammaticalRole::REFLEXIVE) return "themselves";
  } else {
    throw std::invalid_argument("map_pronoun: not a binary target form: " +
                                std::string(surface));
  }
  throw std::invalid_argument("map_pronoun: role does not fit form: " +
                              std::string(surface));
}

// Replacement for the 's clitic once its he/she host became "they".
// POSSESSIVE never reaches here; that reading is left untouched.
inline std::string map_clitic(std::string_view /*host*/, CliticRole role,
                              ContractionStyle style) {
  switch (role) {
    case CliticRole::IS:
      return style == ContractionStyle::PRESERVE ? "'re" : "are";
    case CliticRole::HAS:
      return style == ContractionStyle::PRESERVE ? "'ve" : "have";
    case CliticRole::POSSESSIVE:
      break;
  }
  throw std::invalid_argument("map_clitic: possessive clitics are not rewritten");
}

}  // namespace gnr
