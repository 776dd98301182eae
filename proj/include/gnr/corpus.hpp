#pragma once

// Balanced extraction of sentences containing the eight binary target forms
// and generation of gendered -> neutral parallel corpora.

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "gnr/rewrite.hpp"
#include "gnr/text.hpp"

namespace gnr {

inline constexpr std::array<std::string_view, 8> kTargetForms = {
    "he", "she", "her", "hers", "his", "him", "himself", "herself"};

struct FormCensus {
  std::array<std::size_t, 8> counts{};

  std::size_t& operator[](std::size_t i) { return counts[i]; }
  std::size_t operator[](std::size_t i) const { return counts[i]; }
  std::size_t total() const {
    std::size_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
};

inline std::optional<std::size_t> target_form_index(std::string_view lowercase) {
  for (std::size_t i = 0; i < kTargetForms.size(); ++i) {
    if (lowercase == kTargetForms[i]) return i;
  }
  return std::nullopt;
}

// Token-level, case-insensitive counts of the eight target forms.
inline FormCensus count_forms(const Sentence& s) {
  FormCensus census;
  for (const Token& t : s.tokens) {
    if (auto idx = target_form_index(detail::lower_copy(t.surface))) {
      ++census[*idx];
    }
  }
  return census;
}

struct SampleResult {
  std::vector<std::string> lines;          // in original corpus order
  std::array<std::size_t, 8> line_counts{};  // selected lines containing form
  std::vector<std::string> shortfall;      // forms whose quota went unmet
  std::size_t quota = 0;
};

namespace detail {

// Explicit Fisher-Yates so the selection is identical across standard
// libraries for a given seed.
inline void deterministic_shuffle(std::vector<std::size_t>& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace detail

// Greedy quota-filling sample: scan lines in seeded-shuffle order, keep a
// line only while it reduces some unmet per-form quota of ceil(n/8), stop
// once every quota is met or n lines are kept. Multi-form lines satisfy
// several quotas at once, so fewer than n lines may come back.
inline SampleResult balanced_sample(std::istream& corpus, std::size_t n,
                                    std::uint64_t seed) {
  if (n < 8) throw std::invalid_argument("balanced_sample: n must be >= 8");
  SampleResult result;
  result.quota = (n + 7) / 8;

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(corpus, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  std::vector<std::size_t> order(lines.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  detail::deterministic_shuffle(order, seed);

  std::unordered_set<std::string> chosen_content;
  std::vector<std::size_t> chosen;
  auto all_met = [&] {
    for (auto c : result.line_counts) {
      if (c < result.quota) return false;
    }
    return true;
  };
  for (std::size_t idx : order) {
    if (chosen.size() >= n || all_met()) break;
    const FormCensus census = count_forms(tokenize(lines[idx]));
    bool helps = false;
    for (std::size_t f = 0; f < 8; ++f) {
      if (census[f] > 0 && result.line_counts[f] < result.quota) helps = true;
    }
    if (!helps) continue;
    if (!chosen_content.insert(lines[idx]).second) continue;
    chosen.push_back(idx);
    for (std::size_t f = 0; f < 8; ++f) {
      if (census[f] > 0) ++result.line_counts[f];
    }
  }
  std::sort(chosen.begin(), chosen.end());
  result.lines.reserve(chosen.size());
  for (std::size_t idx : chosen) result.lines.push_back(lines[idx]);
  for (std::size_t f = 0; f < 8; ++f) {
    if (result.line_counts[f] < result.quota) {
      result.shortfall.emplace_back(kTargetForms[f]);
    }
  }
  return result;
}

struct ParallelStats {
  std::size_t lines = 0;
  std::size_t changed = 0;
  std::map<EditCategory, std::size_t> edit_counts;
};

// Streams a corpus through the rewriter, writing originals to `src_out` and
// rewrites to `tgt_out`, one line in produces one line out on both sides.
inline ParallelStats generate_parallel(std::istream& corpus,
                                       const Rewriter& rewriter,
                                       std::ostream& src_out,
                                       std::ostream& tgt_out) {
  ParallelStats stats;
  std::string line;
  while (std::getline(corpus, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const RewriteResult r = rewriter.rewrite(line);
    src_out << line << '\n';
    tgt_out << r.text() << '\n';
    ++stats.lines;
    if (r.changed()) ++stats.changed;
    for (const Edit& e : r.edits) ++stats.edit_counts[e.category];
    if (!src_out || !tgt_out) {
      throw std::runtime_error("write failure while generating parallel corpus");
    }
  }
  return stats;
}

}  // namespace gnr
