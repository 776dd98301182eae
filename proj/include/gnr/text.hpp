#pragma once

// Whitespace-preserving tokenizer. Splits punctuation and English clitics
// the way SMT-style preprocessing does, but keeps the exact original
// whitespace on every token so unchanged text round-trips byte for byte.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gnr {

// One surface token plus the exact whitespace that preceded it in the
// original text. Concatenating leading_whitespace + surface over all tokens
// (plus the sentence's trailing whitespace) reconstructs the input exactly.
struct Token {
  std::string surface;
  std::string leading_whitespace;
  std::size_t index = 0;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string source_text;
  std::string trailing_whitespace;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

namespace detail {

struct Utf8Char {
  char32_t cp;
  std::size_t size;
};

// Lenient decoder: malformed bytes are passed through one at a time so that
// tokenization is total over arbitrary byte strings.
inline Utf8Char decode_utf8(std::string_view s, std::size_t i) {
  const auto b = [&](std::size_t k) {
    return static_cast<unsigned char>(s[i + k]);
  };
  const unsigned char b0 = b(0);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t k) {
    return i + k < s.size() && (b(k) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    return {static_cast<char32_t>((b0 & 0x1Fu) << 6 | (b(1) & 0x3Fu)), 2};
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    return {static_cast<char32_t>((b0 & 0x0Fu) << 12 | (b(1) & 0x3Fu) << 6 |
                                  (b(2) & 0x3Fu)),
            3};
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    return {static_cast<char32_t>((b0 & 0x07u) << 18 | (b(1) & 0x3Fu) << 12 |
                                  (b(2) & 0x3Fu) << 6 | (b(3) & 0x3Fu)),
            4};
  }
  return {b0, 1};
}

inline bool is_unicode_space(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

inline bool is_ascii_punct(char32_t c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
         (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
}

inline bool is_ascii_digit(char32_t c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_alpha(char32_t c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

// Word characters: ASCII letters/digits plus anything non-ASCII that is not
// whitespace. Emoji and symbols outside ASCII pass through inside tokens.
inline bool is_word_char(char32_t c) {
  if (c < 0x80) return is_ascii_alpha(c) || is_ascii_digit(c);
  return !is_unicode_space(c);
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string lower_copy(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
  }
  return true;
}

inline bool iends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         iequals(s.substr(s.size() - suffix.size()), suffix);
}

// The clitic inventory. Unknown apostrophe patterns stay unsplit.
inline constexpr std::array<std::string_view, 6> kApostropheClitics = {
    "'s", "'re", "'ve", "'ll", "'d", "'m"};

// Splits trailing clitics off a word chunk, rightmost first:
// "couldn't've" -> could | n't | 've.
inline void split_clitics(std::string_view word, std::vector<std::string_view>& out) {
  while (true) {
    bool split = false;
    for (std::string_view clitic : kApostropheClitics) {
      if (word.size() > clitic.size() && iends_with(word, clitic)) {
        out.push_back(word.substr(word.size() - clitic.size()));
        word = word.substr(0, word.size() - clitic.size());
        split = true;
        break;
      }
    }
    if (!split && word.size() > 3 && iends_with(word, "n't")) {
      out.push_back(word.substr(word.size() - 3));
      word = word.substr(0, word.size() - 3);
      split = true;
    }
    if (!split) break;
  }
  out.push_back(word);
}

}  // namespace detail

// Tokenizes one line of text. Punctuation is split from words, English
// clitics ('s, n't, 're, 've, 'll, 'd, 'm) become separate tokens, hyphens
// and apostrophes strictly between word characters stay inside the token,
// and , / . stay inside digit runs. Never fails; empty input -> no tokens.
inline Sentence tokenize(std::string_view text) {
  using namespace detail;
  Sentence sent;
  sent.source_text.assign(text);

  std::string pending_ws;
  auto push_token = [&](std::string_view surface) {
    Token t;
    t.surface.assign(surface);
    t.leading_whitespace = std::move(pending_ws);
    pending_ws.clear();
    t.index = sent.tokens.size();
    sent.tokens.push_back(std::move(t));
  };

  // Emits a whitespace-free chunk as one or more tokens.
  auto emit_chunk = [&](std::string_view chunk) {
    // Pre-tokenized input carries clitics as standalone chunks; keep them.
    for (std::string_view clitic : detail::kApostropheClitics) {
      if (detail::iequals(chunk, clitic)) {
        push_token(chunk);
        return;
      }
    }
    if (detail::iequals(chunk, "n't")) {
      push_token(chunk);
      return;
    }
    // Pass 1: cut at ASCII punctuation, honoring intra-word joins.
    std::vector<std::pair<std::size_t, std::size_t>> pieces;  // [begin,end)
    std::vector<bool> wordlike;
    std::size_t i = 0, word_begin = std::string_view::npos;
    char32_t prev_cp = 0;
    auto flush_word = [&](std::size_t end) {
      if (word_begin != std::string_view::npos) {
        pieces.emplace_back(word_begin, end);
        wordlike.push_back(true);
        word_begin = std::string_view::npos;
      }
    };
    while (i < chunk.size()) {
      const Utf8Char u = decode_utf8(chunk, i);
      const std::size_t next = i + u.size;
      bool joins = false;
      if (is_ascii_punct(u.cp) && word_begin != std::string_view::npos &&
          next < chunk.size()) {
        const Utf8Char after = decode_utf8(chunk, next);
        if (u.cp == '\'' || u.cp == '-') {
          joins = is_word_char(prev_cp) && is_word_char(after.cp);
        } else if (u.cp == '.' || u.cp == ',') {
          joins = is_ascii_digit(prev_cp) && is_ascii_digit(after.cp);
        }
      }
      if (is_word_char(u.cp) || joins) {
        if (word_begin == std::string_view::npos) word_begin = i;
      } else {
        flush_word(i);
        pieces.emplace_back(i, next);
        wordlike.push_back(false);
      }
      prev_cp = u.cp;
      i = next;
    }
    flush_word(chunk.size());

    // Pass 2: split clitics off word pieces that contain an apostrophe.
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      std::string_view piece = chunk.substr(pieces[p].first,
                                            pieces[p].second - pieces[p].first);
      if (wordlike[p] && piece.find('\'') != std::string_view::npos) {
        std::vector<std::string_view> parts;
        split_clitics(piece, parts);
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) push_token(*it);
      } else {
        push_token(piece);
      }
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const Utf8Char u = decode_utf8(text, i);
    if (is_unicode_space(u.cp)) {
      pending_ws.append(text.substr(i, u.size));
      i += u.size;
      continue;
    }
    std::size_t chunk_begin = i;
    while (i < text.size()) {
      const Utf8Char v = decode_utf8(text, i);
      if (is_unicode_space(v.cp)) break;
      i += v.size;
    }
    emit_chunk(text.substr(chunk_begin, i - chunk_begin));
  }
  sent.trailing_whitespace = std::move(pending_ws);
  return sent;
}

// Inverse of tokenize for unedited sentences; for edited ones, replacement
// tokens carry whatever leading whitespace the rewrite assigned them.
inline std::string detokenize(const Sentence& s) {
  std::string out;
  out.reserve(s.source_text.size() + 8);
  for (const Token& t : s.tokens) {
    out += t.leading_whitespace;
    out += t.surface;
  }
  out += s.trailing_whitespace;
  return out;
}

}  // namespace gnr
