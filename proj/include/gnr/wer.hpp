#pragma once

// Word-error-rate evaluation against line-aligned parallel files, plus a
// heuristic classifier that labels aligned diff regions with the error
// taxonomy used in reports. The classifier is advisory and never affects
// the WER numbers.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "gnr/morphology.hpp"
#include "gnr/text.hpp"

namespace gnr {

enum class ErrorCategory {
  SVA,
  CORRECTION,
  CLITIC_S,
  SPACE,
  POS,
  CAPITALIZATION,
  RULE,
  UNK,
  OTHER,
};

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::SVA: return "SVA";
    case ErrorCategory::CORRECTION: return "CORRECTION";
    case ErrorCategory::CLITIC_S: return "CLITIC_S";
    case ErrorCategory::SPACE: return "SPACE";
    case ErrorCategory::POS: return "POS";
    case ErrorCategory::CAPITALIZATION: return "CAPITALIZATION";
    case ErrorCategory::RULE: return "RULE";
    case ErrorCategory::UNK: return "UNK";
    case ErrorCategory::OTHER: return "OTHER";
  }
  return "OTHER";
}

enum class AlignOp : unsigned char { MATCH, SUB, DEL, INS };

// Levenshtein distance between token sequences with optional alignment
// backtrace. DEL removes a hypothesis token, INS inserts a reference token.
inline std::size_t edit_distance(const std::vector<std::string>& hyp,
                                 const std::vector<std::string>& ref,
                                 std::vector<AlignOp>* ops = nullptr) {
  const std::size_t n = hyp.size(), m = ref.size();
  std::vector<std::uint32_t> dp((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return dp[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t sub =
          at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      at(i, j) = std::min({sub, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  if (ops) {
    ops->clear();
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
      if (i > 0 && j > 0 &&
          at(i, j) == at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1)) {
        ops->push_back(hyp[i - 1] == ref[j - 1] ? AlignOp::MATCH : AlignOp::SUB);
        --i;
        --j;
      } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
        ops->push_back(AlignOp::DEL);
        --i;
      } else {
        ops->push_back(AlignOp::INS);
        --j;
      }
    }
    std::reverse(ops->begin(), ops->end());
  }
  return at(n, m);
}

// Distance divided by reference length; an empty reference against a
// non-empty hypothesis counts every hypothesis token.
inline double wer(const std::vector<std::string>& hyp,
                  const std::vector<std::string>& ref) {
  const std::size_t d = edit_distance(hyp, ref);
  return static_cast<double>(d) /
         static_cast<double>(std::max<std::size_t>(1, ref.size()));
}

struct DiffRegion {
  std::size_t hyp_begin = 0, hyp_end = 0;
  std::size_t ref_begin = 0, ref_end = 0;
  ErrorCategory category = ErrorCategory::OTHER;
};

namespace detail {

inline bool is_they_form(const std::string& w) {
  const std::string low = lower_copy(w);
  return low == "they" || low == "them" || low == "their" || low == "theirs" ||
         low == "themselves";
}

inline bool is_be_present(const std::string& w) {
  const std::string low = lower_copy(w);
  return low == "is" || low == "are" || low == "'re" || low == "'s" ||
         low == "am";
}

inline bool is_have_present(const std::string& w) {
  const std::string low = lower_copy(w);
  return low == "has" || low == "have" || low == "'ve";
}

inline ErrorCategory classify_region(const std::vector<std::string>& hyp,
                                     const std::vector<std::string>& ref,
                                     const DiffRegion& r) {
  std::string hcat, rcat;
  for (std::size_t i = r.hyp_begin; i < r.hyp_end; ++i) hcat += hyp[i];
  for (std::size_t j = r.ref_begin; j < r.ref_end; ++j) rcat += ref[j];
  if (hcat == rcat) return ErrorCategory::SPACE;

  const bool single_sub =
      r.hyp_end - r.hyp_begin == 1 && r.ref_end - r.ref_begin == 1;
  if (single_sub) {
    const std::string& h = hyp[r.hyp_begin];
    const std::string& rf = ref[r.ref_begin];
    if (iequals(h, rf)) return ErrorCategory::CAPITALIZATION;
    const bool after_they =
        (r.ref_begin > 0 && is_they_form(ref[r.ref_begin - 1])) ||
        (r.hyp_begin > 0 && is_they_form(hyp[r.hyp_begin - 1]));
    if (after_they && ((is_be_present(h) && is_have_present(rf)) ||
                       (is_have_present(h) && is_be_present(rf)))) {
      return ErrorCategory::CLITIC_S;
    }
    if (pluralize_verb(h) == rf || pluralize_verb(rf) == h) {
      return ErrorCategory::SVA;
    }
    if (is_they_form(h) && is_they_form(rf)) return ErrorCategory::POS;
  }
  return ErrorCategory::OTHER;
}

}  // namespace detail

// Aligns hypothesis and reference tokens and labels every non-identical
// region with exactly one category.
inline std::vector<DiffRegion> classify_diffs(const std::vector<std::string>& hyp,
                                              const std::vector<std::string>& ref) {
  std::vector<AlignOp> ops;
  edit_distance(hyp, ref, &ops);
  std::vector<DiffRegion> regions;
  std::size_t i = 0, j = 0;
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k] == AlignOp::MATCH) {
      ++i;
      ++j;
      ++k;
      continue;
    }
    DiffRegion r;
    r.hyp_begin = i;
    r.ref_begin = j;
    while (k < ops.size() && ops[k] != AlignOp::MATCH) {
      switch (ops[k]) {
        case AlignOp::SUB: ++i; ++j; break;
        case AlignOp::DEL: ++i; break;
        case AlignOp::INS: ++j; break;
        case AlignOp::MATCH: break;
      }
      ++k;
    }
    r.hyp_end = i;
    r.ref_end = j;
    r.category = detail::classify_region(hyp, ref, r);
    regions.push_back(r);
  }
  return regions;
}

inline std::vector<DiffRegion> classify_diffs(const Sentence& hyp,
                                              const Sentence& ref) {
  std::vector<std::string> h, r;
  for (const Token& t : hyp.tokens) h.push_back(t.surface);
  for (const Token& t : ref.tokens) r.push_back(t.surface);
  return classify_diffs(h, r);
}

enum class EvalMode { TOKENIZED, RAW };

struct EvalOptions {
  EvalMode mode = EvalMode::TOKENIZED;
  bool ignore_case = false;
};

struct SentenceStats {
  std::size_t edit_distance = 0;  // hypothesis vs reference
  std::size_t ref_length = 0;
};

struct EvalReport {
  double base_wer = 0.0;    // source vs reference, percent, micro-averaged
  double system_wer = 0.0;  // hypothesis vs reference, percent
  double base_wer_macro = 0.0;
  double system_wer_macro = 0.0;
  std::size_t sentence_count = 0;
  std::vector<SentenceStats> per_sentence;
  std::map<ErrorCategory, std::size_t> error_counts;
};

namespace detail {

inline std::vector<std::string> eval_tokens(const std::string& line,
                                            const EvalOptions& opts) {
  std::vector<std::string> out;
  if (opts.mode == EvalMode::TOKENIZED) {
    for (const Token& t : tokenize(line).tokens) out.push_back(t.surface);
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() &&
             is_unicode_space(decode_utf8(line, i).cp)) {
        i += decode_utf8(line, i).size;
      }
      std::size_t begin = i;
      while (i < line.size() && !is_unicode_space(decode_utf8(line, i).cp)) {
        i += decode_utf8(line, i).size;
      }
      if (i > begin) out.push_back(line.substr(begin, i - begin));
    }
  }
  if (opts.ignore_case) {
    for (auto& w : out) w = lower_copy(w);
  }
  return out;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace detail

// Corpus evaluation over three line-aligned files. Corpus WER is
// micro-averaged (total distance over total reference length); the macro
// average over sentences is reported alongside.
inline EvalReport evaluate(const std::filesystem::path& source_file,
                           const std::filesystem::path& hypothesis_file,
                           const std::filesystem::path& reference_file,
                           const EvalOptions& opts = {}) {
  const auto src = detail::read_lines(source_file);
  const auto hyp = detail::read_lines(hypothesis_file);
  const auto ref = detail::read_lines(reference_file);
  if (src.size() != ref.size() || hyp.size() != ref.size()) {
    throw std::runtime_error(
        "line counts differ: " + source_file.string() + " has " +
        std::to_string(src.size()) + ", " + hypothesis_file.string() + " has " +
        std::to_string(hyp.size()) + ", " + reference_file.string() + " has " +
        std::to_string(ref.size()));
  }

  EvalReport report;
  report.sentence_count = ref.size();
  std::size_t base_dist = 0, sys_dist = 0, ref_total = 0;
  double base_macro = 0.0, sys_macro = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const auto s = detail::eval_tokens(src[i], opts);
    const auto h = detail::eval_tokens(hyp[i], opts);
    const auto r = detail::eval_tokens(ref[i], opts);
    const std::size_t bd = edit_distance(s, r);
    const std::size_t sd = edit_distance(h, r);
    base_dist += bd;
    sys_dist += sd;
    ref_total += r.size();
    const double denom = static_cast<double>(std::max<std::size_t>(1, r.size()));
    base_macro += static_cast<double>(bd) / denom;
    sys_macro += static_cast<double>(sd) / denom;
    report.per_sentence.push_back({sd, r.size()});
    for (const DiffRegion& region : classify_diffs(h, r)) {
      ++report.error_counts[region.category];
    }
  }
  const double denom = static_cast<double>(std::max<std::size_t>(1, ref_total));
  report.base_wer = 100.0 * static_cast<double>(base_dist) / denom;
  report.system_wer = 100.0 * static_cast<double>(sys_dist) / denom;
  const double n = static_cast<double>(std::max<std::size_t>(1, ref.size()));
  report.base_wer_macro = 100.0 * base_macro / n;
  report.system_wer_macro = 100.0 * sys_macro / n;
  return report;
}

}  // namespace gnr
