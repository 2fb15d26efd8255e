#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entityscore/script.hpp"

namespace entityscore {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::int64_t kHundred = 100;
inline constexpr std::int64_t kThousand = 1'000;
inline constexpr std::int64_t kLakh = 100'000;
inline constexpr std::int64_t kCrore = 10'000'000;
inline constexpr std::uint64_t kSpellLimit = 1'000'000'000'000ULL;

enum class LexiconKind { Unit, Multiplier, CurrencyMarker };
enum class LexiconScript { Latin, Native };

/// One lexicon line. Units cover 0-99 plus the hundred word (value 100);
/// multipliers are powers of ten from 10^3 upward.
struct LexiconEntry {
  std::string word;
  std::int64_t value = 0;
  LexiconKind kind = LexiconKind::Unit;
  LexiconScript script = LexiconScript::Latin;
};

/// Per-language number lexicon. Immutable once constructed; words are stored
/// NFKC + casefolded so lookups take normalized tokens.
class MultiplierTable {
 public:
  /// Throws DataError on duplicate words or out-of-range values.
  MultiplierTable(std::string name, std::vector<LexiconEntry> entries);

  /// Built-in English table (Indian and Western multipliers, zero to
  /// ninety-nine with hyphenated compounds, common rupee markers).
  static const MultiplierTable& english();

  /// Lexicon text: one `word value kind script` record per line, fields
  /// separated by white space, '#' starts a comment.
  static MultiplierTable parse(std::string_view contents, std::string name);
  static MultiplierTable load(const std::filesystem::path& path, std::string name);

  /// Union of two tables; on a word present in both, this table wins.
  MultiplierTable merged_with(const MultiplierTable& fallback) const;

  const std::string& name() const { return name_; }
  const std::vector<LexiconEntry>& entries() const { return entries_; }

  std::optional<std::int64_t> unit_value(std::string_view word) const;
  std::optional<std::int64_t> multiplier_value(std::string_view word) const;
  bool is_currency_marker(std::string_view word) const;
  /// Longest first, so prefix stripping prefers "rs." over "rs".
  const std::vector<std::string>& currency_markers() const { return markers_; }

  /// Preferred spelling for a unit value (native script first), if any.
  std::optional<std::string> unit_word(std::int64_t value) const;
  std::optional<std::string> multiplier_word(std::int64_t value) const;
  /// Script of unit_word(value); nullopt when there is no word.
  std::optional<LexiconScript> unit_script(std::int64_t value) const;

 private:
  std::string name_;
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_word_;
  std::unordered_map<std::int64_t, std::string> unit_spelling_;
  std::unordered_map<std::int64_t, std::string> multiplier_spelling_;
  std::unordered_map<std::int64_t, LexiconScript> unit_script_;
  std::vector<std::string> markers_;
};

enum class SourceForm { LatinNumeral, WordSequence, Mixed };
std::string_view source_form_name(SourceForm form);

/// `consumed` is a token index range for parse_number_words, and a code point
/// range into the casefolded text for parse_currency_expression.
struct ParsedAmount {
  Rational value;
  Span consumed;
  SourceForm source_form = SourceForm::LatinNumeral;
};

/// Additive-multiplicative evaluation of a whole token run, e.g.
/// {five, lakh, forty-two, thousand, thirty-five} -> 542035. Multipliers
/// must descend; the one exception is crore, which may scale a preceding
/// sub-crore count ("two thousand crore"). Currency markers are skipped.
std::optional<ParsedAmount> parse_number_words(std::span<const std::string> tokens,
                                               const MultiplierTable& table);

/// Plain digits, Western ("1,234,567") or Indian ("12,34,567") grouping, and
/// an optional decimal fraction. Any Unicode decimal digit is accepted.
std::optional<ParsedAmount> parse_latin_numeral(std::string_view s);

/// Every maximal numeric expression in `text`, left to right. Runs that do
/// not parse as a whole are split greedily into the longest parsable pieces.
std::vector<ParsedAmount> parse_currency_expression(std::string_view text,
                                                    const MultiplierTable& table);

/// Indian grouping, largest multiplier first. Throws RangeError for values
/// at or above 10^12 and ConfigError if the table lacks a needed word.
std::vector<std::string> spell_number(std::uint64_t value, const MultiplierTable& table);

enum class DigitRewriteMode { Grouped, DigitByDigit };

std::string rewrite_digit_runs(std::string_view text, const MultiplierTable& table,
                               DigitRewriteMode mode = DigitRewriteMode::Grouped);

/// Digit sequence a listener would write down: unit words become their
/// decimal digits, literal digits are kept, everything else is dropped.
std::string spoken_digit_sequence(std::string_view text, const MultiplierTable& table);

/// Exact decimal when the value terminates, otherwise "p/q".
std::string format_rational(const Rational& value);

}  // namespace entityscore
