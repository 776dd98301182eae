#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnr/text.hpp"

namespace gnr {

// Coarse POS inventory; the rewrite rules need verb finiteness/number and a
// few closed classes, nothing finer.
enum class Pos {
  NOUN,
  PROPN,
  ADJ,
  VERB_FIN_3SG,
  VERB_FIN_PL,
  VERB_PAST,
  VERB_PART,
  VERB_GER,
  MODAL,
  PRON,
  DET,
  ADP,
  ADV,
  CONJ,
  PUNCT,
  NUM,
  OTHER,
};

enum class Relation { NSUBJ, OBJ, POSS, CONJ, OTHER };

enum class AnnotationSource { BUILTIN, EXTERNAL };

struct TokenAnnotation {
  Pos pos = Pos::OTHER;
  std::optional<std::size_t> head;  // token index, never the token itself
  std::optional<Relation> relation;
};

struct AnnotatedSentence {
  Sentence sentence;
  std::vector<TokenAnnotation> annotations;  // one per token
  AnnotationSource source = AnnotationSource::BUILTIN;

  const Token& token(std::size_t i) const { return sentence.tokens[i]; }
  Pos pos(std::size_t i) const { return annotations[i].pos; }
  std::size_t size() const { return sentence.tokens.size(); }
};

// Readings of the three ambiguous forms.
enum class HerRole { OBJECTIVE, POSSESSIVE_DET };
enum class HisRole { POSSESSIVE_DET, INDEPENDENT_POSSESSIVE };
enum class CliticRole { IS, HAS, POSSESSIVE };

inline const char* to_string(Pos p) {
  switch (p) {
    case Pos::NOUN: return "NOUN";
    case Pos::PROPN: return "PROPN";
    case Pos::ADJ: return "ADJ";
    case Pos::VERB_FIN_3SG: return "VERB_FIN_3SG";
    case Pos::VERB_FIN_PL: return "VERB_FIN_PL";
    case Pos::VERB_PAST: return "VERB_PAST";
    case Pos::VERB_PART: return "VERB_PART";
    case Pos::VERB_GER: return "VERB_GER";
    case Pos::MODAL: return "MODAL";
    case Pos::PRON: return "PRON";
    case Pos::DET: return "DET";
    case Pos::ADP: return "ADP";
    case Pos::ADV: return "ADV";
    case Pos::CONJ: return "CONJ";
    case Pos::PUNCT: return "PUNCT";
    case Pos::NUM: return "NUM";
    case Pos::OTHER: return "OTHER";
  }
  return "OTHER";
}

inline std::optional<Pos> pos_from_string(std::string_view s) {
  static const std::pair<std::string_view, Pos> table[] = {
      {"NOUN", Pos::NOUN},   {"PROPN", Pos::PROPN}, {"ADJ", Pos::ADJ},
      {"VERB_FIN_3SG", Pos::VERB_FIN_3SG}, {"VERB_FIN_PL", Pos::VERB_FIN_PL},
      {"VERB_PAST", Pos::VERB_PAST}, {"VERB_PART", Pos::VERB_PART},
      {"VERB_GER", Pos::VERB_GER}, {"MODAL", Pos::MODAL}, {"PRON", Pos::PRON},
      {"DET", Pos::DET},     {"ADP", Pos::ADP},     {"ADV", Pos::ADV},
      {"CONJ", Pos::CONJ},   {"PUNCT", Pos::PUNCT}, {"NUM", Pos::NUM},
      {"OTHER", Pos::OTHER},
  };
  for (const auto& [name, tag] : table) {
    if (s == name) return tag;
  }
  return std::nullopt;
}

}  // namespace gnr
