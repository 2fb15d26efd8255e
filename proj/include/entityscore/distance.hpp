#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entityscore {

/// Unit-cost edit distance, two-row dynamic program.
template <typename T>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(std::span<const char>(a.data(), a.size()),
                     std::span<const char>(b.data(), b.size()));
}

/// Default: NFKC + casefold, punctuation stripped from token edges, white
/// space collapsed. Strict: raw text split on white space.
enum class Normalization { Default, Strict };

std::string_view normalization_name(Normalization n);
Normalization parse_normalization(std::string_view name);

struct ErrorRate {
  std::size_t distance = 0;
  std::size_t reference_length = 0;

  /// nullopt for an empty reference. May exceed 1.0.
  std::optional<double> rate() const {
    if (reference_length == 0) return std::nullopt;
    return static_cast<double>(distance) / static_cast<double>(reference_length);
  }
};

/// The token sequence WER runs over.
std::vector<std::string> wer_tokens(std::string_view text, Normalization n);
/// The code point sequence CER runs over; spaces between words count.
std::u32string cer_characters(std::string_view text, Normalization n);

// Counts without the empty-reference check, for pooling across a corpus.
ErrorRate word_errors(std::string_view reference, std::string_view hypothesis,
                      Normalization n = Normalization::Default);
ErrorRate char_errors(std::string_view reference, std::string_view hypothesis,
                      Normalization n = Normalization::Default);

/// Throw DataError when the normalized reference is empty.
ErrorRate wer(std::string_view reference, std::string_view hypothesis,
              Normalization n = Normalization::Default);
ErrorRate cer(std::string_view reference, std::string_view hypothesis,
              Normalization n = Normalization::Default);

}  // namespace entityscore
