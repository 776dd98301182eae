#pragma once

// Heuristic POS tagging: a closed-class lexicon loaded from disk plus
// suffix and local-context rules, enough to resolve her/his/'s readings and
// find the finite verbs that need agreement fixes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "gnr/tags.hpp"
#include "gnr/text.hpp"

namespace gnr {

// Directory holding the shipped lexicon files. The GNR_DATA_DIR environment
// variable wins over the compile-time default.
inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("GNR_DATA_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
#ifdef GNR_DEFAULT_DATA_DIR
  return std::filesystem::path(GNR_DEFAULT_DATA_DIR);
#else
  return std::filesystem::path("data");
#endif
}

class Tagger {
 public:
  // Lexicon rows are form<TAB>tag; '#' lines and blanks are ignored.
  static Tagger from_files(const std::filesystem::path& lexicon_file,
                           const std::filesystem::path& participle_file) {
    Tagger t;
    t.load_two_column(lexicon_file, [&t](std::string form, Pos tag) {
      t.lexicon_.emplace(std::move(form), tag);
    });
    t.load_two_column(participle_file, [&t](std::string form, Pos tag) {
      if (tag != Pos::VERB_PART) {
        throw std::runtime_error("participle lexicon rows must be tagged VERB_PART");
      }
      t.participles_.insert(std::move(form));
    });
    return t;
  }

  static Tagger with_default_data() {
    const auto dir = default_data_dir();
    return from_files(dir / "tagger_lexicon.tsv", dir / "participles.tsv");
  }

  bool is_participle_form(std::string_view surface) const {
    const std::string low = detail::lower_copy(surface);
    if (participles_.count(low)) return true;
    return low.size() >= 4 && detail::iends_with(low, "ed");
  }

  AnnotatedSentence annotate(const Sentence& s) const {
    AnnotatedSentence out;
    out.sentence = s;
    out.annotations.resize(s.tokens.size());
    out.source = AnnotationSource::BUILTIN;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      out.annotations[i].pos = tag_token(out, i);
    }
    return out;
  }

  // her -> them (objective) or their (possessive determiner).
  HerRole classify_her(const AnnotatedSentence& a, std::size_t i) const {
    require_surface(a, i, "her");
    if (external_poss(a, i)) return HerRole::POSSESSIVE_DET;
    return nominal_follows(a, i) ? HerRole::POSSESSIVE_DET
                                 : HerRole::OBJECTIVE;
  }

  // his -> their (determiner) or theirs (standing alone).
  HisRole classify_his(const AnnotatedSentence& a, std::size_t i) const {
    require_surface(a, i, "his");
    if (external_poss(a, i)) return HisRole::POSSESSIVE_DET;
    return nominal_follows(a, i) ? HisRole::POSSESSIVE_DET
                                 : HisRole::INDEPENDENT_POSSESSIVE;
  }

  // 's after he/she reads as "is" or "has"; any other host keeps its
  // possessive reading and is left alone.
  CliticRole classify_clitic_s(const AnnotatedSentence& a, std::size_t i) const {
    if (i >= a.size() || !detail::iequals(a.token(i).surface, "'s")) {
      throw std::invalid_argument("classify_clitic_s: token is not 's");
    }
    if (i == 0) return CliticRole::POSSESSIVE;
    const std::string host = detail::lower_copy(a.token(i - 1).surface);
    if (host != "he" && host != "she") return CliticRole::POSSESSIVE;
    if (i + 1 >= a.size()) return CliticRole::IS;
    const Token& next = a.token(i + 1);
    if (a.pos(i + 1) == Pos::ADJ) return CliticRole::IS;
    // 's + bare past is ungrammatical, so a participle-capable form forces
    // the "has" reading.
    if (is_participle_form(next.surface)) return CliticRole::HAS;
    return CliticRole::IS;
  }

  const std::unordered_map<std::string, Pos>& lexicon() const { return lexicon_; }

 private:
  std::unordered_map<std::string, Pos> lexicon_;
  std::unordered_set<std::string> participles_;

  template <typename RowFn>
  void load_two_column(const std::filesystem::path& path, RowFn&& row) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot open lexicon file: " + path.string());
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
          line.find('\t', tab + 1) != std::string::npos) {
        throw std::runtime_error("malformed lexicon row at " + path.string() +
                                 ":" + std::to_string(lineno));
      }
      const auto tag = pos_from_string(line.substr(tab + 1));
      if (!tag) {
        throw std::runtime_error("unknown tag at " + path.string() + ":" +
                                 std::to_string(lineno));
      }
      row(detail::lower_copy(line.substr(0, tab)), *tag);
    }
  }

  static void require_surface(const AnnotatedSentence& a, std::size_t i,
                              std::string_view expect) {
    if (i >= a.size() || !detail::iequals(a.token(i).surface, expect)) {
      throw std::invalid_argument(std::string("classifier precondition: token is not '") +
                                  std::string(expect) + "'");
    }
  }

  static bool external_poss(const AnnotatedSentence& a, std::size_t i) {
    return a.source == AnnotationSource::EXTERNAL &&
           a.annotations[i].relation == Relation::POSS;
  }

  // Scans at most three tokens to the right, skipping adjectives and
  // adverbs, looking for the nominal a possessive determiner would modify.
  static bool nominal_follows(const AnnotatedSentence& a, std::size_t i) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const std::size_t j = i + k;
      if (j >= a.size()) return false;
      switch (a.pos(j)) {
        case Pos::ADJ:
        case Pos::ADV:
          continue;
        case Pos::NOUN:
        case Pos::PROPN:
        case Pos::NUM:
          return true;
        default:
          return false;
      }
    }
    return false;
  }

  bool has_letter(std::string_view s) const {
    for (char c : s) {
      if (detail::is_ascii_alpha(static_cast<unsigned char>(c))) return true;
    }
    return false;
  }

  Pos tag_token(const AnnotatedSentence& a, std::size_t i) const {
    const std::string& surface = a.token(i).surface;
    const std::string low = detail::lower_copy(surface);

    if (auto it = lexicon_.find(low); it != lexicon_.end()) return it->second;

    bool all_punct = true, all_digitish = true, any_digit = false;
    for (std::size_t b = 0; b < surface.size();) {
      const auto u = detail::decode_utf8(surface, b);
      if (!detail::is_ascii_punct(u.cp)) all_punct = false;
      if (detail::is_ascii_digit(u.cp)) {
        any_digit = true;
      } else if (u.cp != '.' && u.cp != ',' && u.cp != '-' && u.cp != '%') {
        all_digitish = false;
      }
      b += u.size;
    }
    if (all_punct) return Pos::PUNCT;
    if (any_digit && all_digitish) return Pos::NUM;
    if (!has_letter(low)) return Pos::OTHER;

    // Capitalized away from the sentence start reads as a proper noun.
    if (i > 0 && surface[0] >= 'A' && surface[0] <= 'Z') return Pos::PROPN;

    if (low.size() >= 5 && detail::iends_with(low, "ing")) return Pos::VERB_GER;
    if (low.size() >= 4 && detail::iends_with(low, "ed")) {
      // After a have/be form the -ed form is a participle.
      const auto prev = previous_content(a, i);
      if (prev && is_have_or_be(*prev)) return Pos::VERB_PART;
      return Pos::VERB_PAST;
    }
    if (low.size() >= 4 && detail::iends_with(low, "ly")) return Pos::ADV;
    if (low.size() >= 3 && low.back() == 's' && !detail::iends_with(low, "ss")) {
      if (subject_precedes(a, i)) return Pos::VERB_FIN_3SG;
      return Pos::NOUN;
    }
    return Pos::NOUN;
  }

  std::optional<std::string> previous_content(const AnnotatedSentence& a,
                                              std::size_t i) const {
    for (std::size_t j = i; j-- > 0;) {
      if (a.pos(j) == Pos::ADV) continue;
      return detail::lower_copy(a.token(j).surface);
    }
    return std::nullopt;
  }

  bool lexicon_finite(const std::string& surface) const {
    const auto it = lexicon_.find(detail::lower_copy(surface));
    if (it == lexicon_.end()) return false;
    return it->second == Pos::VERB_FIN_3SG || it->second == Pos::VERB_FIN_PL ||
           it->second == Pos::VERB_PAST || it->second == Pos::MODAL;
  }

  static bool is_have_or_be(const std::string& w) {
    return w == "have" || w == "has" || w == "had" || w == "'ve" ||
           w == "'s" || w == "'d" || w == "is" || w == "are" || w == "was" ||
           w == "were" || w == "be" || w == "been" || w == "am" || w == "'re" ||
           w == "'m";
  }

  // Context for the -s ambiguity: a plausible subject immediately to the
  // left (skipping adverbs) reads the form as a finite 3sg verb; a conjoined
  // finite verb chain does too ("works and works").
  bool subject_precedes(const AnnotatedSentence& a, std::size_t i) const {
    std::size_t j = i;
    while (j-- > 0) {
      switch (a.pos(j)) {
        case Pos::ADV:
          continue;
        case Pos::PRON: {
          const std::string w = detail::lower_copy(a.token(j).surface);
          return w == "he" || w == "she" || w == "it" || w == "i" ||
                 w == "you" || w == "we" || w == "they" || w == "who";
        }
        case Pos::PROPN:
        case Pos::NOUN:
          return true;
        case Pos::CONJ:
        case Pos::PUNCT: {
          // Conjoined verb: "works and works", "is nice and helps". The
          // backward scan skips modifiers but stops at nominals so that
          // "dogs and cats" stays nominal.
          const std::string w = detail::lower_copy(a.token(j).surface);
          if (a.pos(j) == Pos::PUNCT && w != ",") return false;
          // A finite verb right after the form marks a comma splice whose
          // subject the form is ("he works, books are cheap").
          if (i + 1 < a.size() && lexicon_finite(a.token(i + 1).surface)) {
            return false;
          }
          std::size_t k = j;
          while (k-- > 0) {
            switch (a.pos(k)) {
              case Pos::ADV:
              case Pos::ADJ:
              case Pos::CONJ:
                continue;
              case Pos::PUNCT:
                if (a.token(k).surface == ",") continue;
                return false;
              case Pos::VERB_FIN_3SG:
                return true;
              default:
                return false;
            }
          }
          return false;
        }
        default:
          return false;
      }
    }
    return false;
  }
};

}  // namespace gnr
