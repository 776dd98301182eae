#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "gnr/text.hpp"

using gnr::Sentence;
using gnr::Token;
using gnr::detokenize;
using gnr::tokenize;

namespace {

std::vector<std::string> surfaces(const Sentence& s) {
  std::vector<std::string> out;
  for (const Token& t : s.tokens) out.push_back(t.surface);
  return out;
}

// Random UTF-8 string mixing ASCII, accents, CJK, emoji and odd whitespace.
std::string random_utf8(std::mt19937_64& rng, std::size_t max_len) {
  static const std::vector<std::string> pieces = {
      "a", "b", "Z", "9", " ", "  ", "\t", "\n", "'", "-", ".", ",", "!", "?",
      "(", ")", "\"", "he", "she's", "don't", "o'clock", "man-made", "3.5",
      "é", "ü", "ß", "Նա", "中文", "😀", "🙈", " ", " ", "…", "—",
      "’", "“", "”"};
  std::string out;
  const std::size_t n = rng() % max_len;
  for (std::size_t i = 0; i < n; ++i) {
    out += pieces[rng() % pieces.size()];
  }
  return out;
}

bool is_recognized_clitic(const std::string& low) {
  return low == "'s" || low == "'re" || low == "'ve" || low == "'ll" ||
         low == "'d" || low == "'m" || low == "n't";
}

}  // namespace

TEST_CASE("clitics and punctuation split") {
  CHECK(surfaces(tokenize("He's here.")) ==
        std::vector<std::string>{"He", "'s", "here", "."});
  CHECK(surfaces(tokenize("Hello")) == std::vector<std::string>{"Hello"});
  CHECK(surfaces(tokenize("")).empty());
  CHECK(surfaces(tokenize("don't")) == std::vector<std::string>{"do", "n't"});
  CHECK(surfaces(tokenize("can't")) == std::vector<std::string>{"ca", "n't"});
  CHECK(surfaces(tokenize("I'd've guessed")) ==
        std::vector<std::string>{"I", "'d", "'ve", "guessed"});
  CHECK(surfaces(tokenize("they're")) ==
        std::vector<std::string>{"they", "'re"});
  CHECK(surfaces(tokenize("o'clock")) == std::vector<std::string>{"o'clock"});
  CHECK(surfaces(tokenize("a man-made lake")) ==
        std::vector<std::string>{"a", "man-made", "lake"});
  CHECK(surfaces(tokenize("costs 3.5 million, right?")) ==
        std::vector<std::string>{"costs", "3.5", "million", ",", "right", "?"});
  CHECK(surfaces(tokenize("(see her)")) ==
        std::vector<std::string>{"(", "see", "her", ")"});
}

TEST_CASE("whitespace provenance is exact") {
  const Sentence s = tokenize("  He's \t here. ");
  REQUIRE(s.tokens.size() == 4);
  CHECK(s.tokens[0].leading_whitespace == "  ");
  CHECK(s.tokens[1].leading_whitespace == "");
  CHECK(s.tokens[2].leading_whitespace == " \t ");
  CHECK(s.tokens[3].leading_whitespace == "");
  CHECK(s.trailing_whitespace == " ");
  CHECK(detokenize(s) == "  He's \t here. ");
}

TEST_CASE("token indices are positions") {
  const Sentence s = tokenize("a b c");
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    CHECK(s.tokens[i].index == i);
  }
}

TEST_CASE("round trip on paper-style inputs") {
  for (const char* text : {
           "He's here.",
           "He opened the door.",
           "She works in a company.",
           " leading space",
           "trailing space ",
           "double  space",
           "",
           "   ",
           "emoji 😀 and Նա",
           "“quotes” and — dashes…",
           "He’s got a typographic apostrophe",
       }) {
    CAPTURE(text);
    CHECK(detokenize(tokenize(text)) == text);
  }
}

TEST_CASE("round trip over random UTF-8 strings") {
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 2000; ++i) {
    const std::string text = random_utf8(rng, 40);
    CAPTURE(i, text);
    REQUIRE(detokenize(tokenize(text)) == text);
  }
}

TEST_CASE("surfaces never contain whitespace") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Sentence s = tokenize(random_utf8(rng, 30));
    for (const Token& t : s.tokens) {
      CHECK(!t.surface.empty());
      for (char c : t.surface) {
        CHECK(c != ' ');
        CHECK(c != '\t');
        CHECK(c != '\n');
      }
    }
  }
}

TEST_CASE("apostrophe tokens are clitics, internal, or bare punctuation") {
  std::mt19937_64 rng(99);
  auto check_sentence = [](const Sentence& s) {
    for (const Token& t : s.tokens) {
      const auto pos = t.surface.find('\'');
      if (pos == std::string::npos) continue;
      bool has_alnum = false;
      for (char c : t.surface) {
        if (gnr::detail::is_ascii_alpha(static_cast<unsigned char>(c)) ||
            gnr::detail::is_ascii_digit(static_cast<unsigned char>(c))) {
          has_alnum = true;
        }
      }
      if (!has_alnum) continue;  // bare punctuation
      const std::string low = gnr::detail::lower_copy(t.surface);
      if (is_recognized_clitic(low)) continue;
      // Otherwise every apostrophe must be strictly internal.
      CAPTURE(t.surface);
      CHECK(t.surface.front() != '\'');
      CHECK(t.surface.back() != '\'');
    }
  };
  check_sentence(tokenize("the students' books aren't Bill's o'clock 'tis"));
  for (int i = 0; i < 500; ++i) {
    check_sentence(tokenize(random_utf8(rng, 30)));
  }
}
