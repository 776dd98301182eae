#pragma once

// CoNLL-U v2 reader for externally produced annotations. Only the columns
// the rewriter consumes are mapped: UPOS/XPOS to the coarse tag set and
// HEAD/DEPREL to head indices and a small relation inventory.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gnr/tagger.hpp"
#include "gnr/tags.hpp"
#include "gnr/text.hpp"

namespace gnr {

struct ConlluToken {
  std::string form;
  std::string upos;
  std::string xpos;
  std::string feats;
  std::optional<std::size_t> head;  // 0-based token index; root -> nullopt
  std::string deprel;
};

struct ConlluSentence {
  std::vector<ConlluToken> tokens;
  std::string text;  // from "# text = ...", else forms joined by spaces
};

namespace detail {

inline Pos map_conllu_pos(const ConlluToken& t) {
  const std::string& u = t.upos;
  if (u == "NOUN") return Pos::NOUN;
  if (u == "PROPN") return Pos::PROPN;
  if (u == "ADJ") return Pos::ADJ;
  if (u == "ADV") return Pos::ADV;
  if (u == "ADP") return Pos::ADP;
  if (u == "DET") return Pos::DET;
  if (u == "PRON") return Pos::PRON;
  if (u == "NUM") return Pos::NUM;
  if (u == "PUNCT" || u == "SYM") return Pos::PUNCT;
  if (u == "CCONJ" || u == "SCONJ" || u == "CONJ") return Pos::CONJ;
  if (u == "VERB" || u == "AUX") {
    const std::string& x = t.xpos;
    if (x == "VBZ") return Pos::VERB_FIN_3SG;
    if (x == "VBP" || x == "VB") return Pos::VERB_FIN_PL;
    if (x == "VBD") return Pos::VERB_PAST;
    if (x == "VBN") return Pos::VERB_PART;
    if (x == "VBG") return Pos::VERB_GER;
    if (x == "MD") return Pos::MODAL;
    // No PTB tag; fall back to morphological features.
    const std::string& f = t.feats;
    auto has = [&](std::string_view key) {
      return f.find(key) != std::string::npos;
    };
    if (has("VerbForm=Part")) {
      return has("Tense=Pres") ? Pos::VERB_GER : Pos::VERB_PART;
    }
    if (has("Tense=Past")) return Pos::VERB_PAST;
    if (has("VerbForm=Ger")) return Pos::VERB_GER;
    if (has("Person=3") && has("Number=Sing") && has("VerbForm=Fin")) {
      return Pos::VERB_FIN_3SG;
    }
    return Pos::VERB_FIN_PL;
  }
  return Pos::OTHER;
}

inline Relation map_conllu_relation(const std::string& deprel) {
  if (deprel.find("poss") != std::string::npos) return Relation::POSS;
  const std::string base = deprel.substr(0, deprel.find(':'));
  if (base == "nsubj" || base == "csubj") return Relation::NSUBJ;
  if (base == "obj" || base == "iobj" || base == "dobj") return Relation::OBJ;
  if (base == "conj") return Relation::CONJ;
  return Relation::OTHER;
}

}  // namespace detail

// Parses a CoNLL-U file into sentence blocks. Multiword-token ranges and
// empty nodes are skipped; a row without 10 tab-separated columns or with an
// out-of-range HEAD is a parse error naming the line.
inline std::vector<ConlluSentence> parse_conllu(std::istream& in) {
  std::vector<ConlluSentence> out;
  ConlluSentence current;
  std::vector<std::size_t> row_lines;
  std::string line;
  std::size_t lineno = 0;

  auto fail = [&](std::size_t at) {
    throw std::runtime_error("malformed CoNLL-U at line " + std::to_string(at));
  };
  auto parse_index = [&](const std::string& field, std::size_t at) {
    if (field.empty() || field.size() > 9) fail(at);
    std::size_t value = 0;
    for (char c : field) {
      if (c < '0' || c > '9') fail(at);
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
  };
  auto finish = [&]() {
    if (current.tokens.empty()) return;
    // Validate heads now that the sentence size is known.
    for (std::size_t i = 0; i < current.tokens.size(); ++i) {
      const auto& h = current.tokens[i].head;
      if (h && (*h >= current.tokens.size() || *h == i)) fail(row_lines[i]);
    }
    if (current.text.empty()) {
      std::string joined;
      for (const auto& t : current.tokens) {
        if (!joined.empty()) joined += ' ';
        joined += t.form;
      }
      current.text = std::move(joined);
    }
    out.push_back(std::move(current));
    current = ConlluSentence{};
    row_lines.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish();
      continue;
    }
    if (line.front() == '#') {
      constexpr std::string_view key = "# text =";
      if (line.rfind(key, 0) == 0) {
        std::string t = line.substr(key.size());
        if (!t.empty() && t.front() == ' ') t.erase(t.begin());
        current.text = std::move(t);
      }
      continue;
    }
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 10) fail(lineno);
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos ||
        id.find('.') != std::string::npos) {
      continue;  // multiword-token range or empty node
    }
    const std::size_t id_value = parse_index(id, lineno);
    if (id_value != current.tokens.size() + 1) fail(lineno);

    ConlluToken tok;
    tok.form = cols[1];
    tok.upos = cols[3];
    tok.xpos = cols[4];
    tok.feats = cols[5];
    if (cols[6] != "_") {
      const std::size_t head_id = parse_index(cols[6], lineno);
      if (head_id > 0) tok.head = head_id - 1;
    }
    tok.deprel = cols[7];
    current.tokens.push_back(std::move(tok));
    row_lines.push_back(lineno);
  }
  finish();
  return out;
}

inline std::vector<ConlluSentence> parse_conllu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CoNLL-U file: " + path.string());
  return parse_conllu(in);
}

// Builds an EXTERNAL AnnotatedSentence for `text` from a parsed block.
// Returns nullopt when the block's token count does not match our
// tokenization of the text; callers then fall back to the builtin tagger.
inline std::optional<AnnotatedSentence> align_external(
    const ConlluSentence& block, const Sentence& tokens) {
  if (block.tokens.size() != tokens.tokens.size()) return std::nullopt;
  AnnotatedSentence out;
  out.sentence = tokens;
  out.source = AnnotationSource::EXTERNAL;
  out.annotations.reserve(block.tokens.size());
  for (const auto& t : block.tokens) {
    TokenAnnotation ann;
    ann.pos = detail::map_conllu_pos(t);
    ann.head = t.head;
    ann.relation = detail::map_conllu_relation(t.deprel);
    out.annotations.push_back(ann);
  }
  return out;
}

// Reads a CoNLL-U file as a sequence of annotated sentences, tokenizing each
// block's text with our tokenizer. Blocks whose token count disagrees with
// ours fall back to the builtin tagger, reporting the 1-based block index.
inline std::vector<AnnotatedSentence> load_external_annotations(
    const std::filesystem::path& path, const Tagger& fallback,
    std::vector<std::size_t>* fallback_blocks = nullptr) {
  std::vector<AnnotatedSentence> out;
  const auto blocks = parse_conllu(path);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Sentence tokens = tokenize(blocks[i].text);
    if (auto ext = align_external(blocks[i], tokens)) {
      out.push_back(std::move(*ext));
    } else {
      if (fallback_blocks) fallback_blocks->push_back(i + 1);
      out.push_back(fallback.annotate(tokens));
    }
  }
  return out;
}

}  // namespace gnr
