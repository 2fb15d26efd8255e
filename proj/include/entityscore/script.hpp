#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entityscore {

enum class Language { Telugu, Tamil, Hindi };

/// Accepts "te"/"ta"/"hi" and the English names; throws ConfigError otherwise.
Language parse_language(std::string_view code);
std::string_view language_code(Language lang);

struct ScriptBlock {
  Language language;
  char32_t block_start;
  char32_t block_end;  // inclusive

  bool contains(char32_t c) const { return c >= block_start && c <= block_end; }
};

ScriptBlock script_block(Language lang);

/// Letter counts behind a Script Fidelity Rate. Only general category L*
/// code points are counted; marks, digits, punctuation, symbols and white
/// space are ignored on both sides of the fraction.
struct SfrResult {
  std::size_t letter_count = 0;
  std::size_t in_block_count = 0;

  /// nullopt when there are no letters.
  std::optional<double> value() const;
};

SfrResult sfr(std::string_view hypothesis, Language lang);

/// Pooled over letters, not averaged over rows. Rows without letters are
/// skipped; returns nullopt when every row is empty.
std::optional<double> aggregate_sfr(std::span<const SfrResult> results);

/// Half-open code point range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

inline constexpr double kDefaultPurityThreshold = 0.8;

/// SFR of `text` with every letter inside `excluded_spans` removed from both
/// counts, compared against `threshold` (inclusive). Spans index code points
/// of `text` as given; they must be in range and non-overlapping.
bool script_purity_check(std::string_view text, Language lang,
                         std::span<const Span> excluded_spans,
                         double threshold = kDefaultPurityThreshold);

}  // namespace entityscore
