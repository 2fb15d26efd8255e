#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace entityscore {

/// Stored alongside the raw input so downstream reports can show both.
struct NormalizedText {
  std::string raw;
  std::string normalized;  // NFKC, whitespace runs collapsed, trimmed

  static NormalizedText from(std::string_view s);
};

std::string nfkc_normalize(std::string_view s);

/// NFKC followed by full Unicode case folding, iterated to a fixed point.
std::string casefold_normalize(std::string_view s);

/// Replaces every run of Unicode white space with a single U+0020 and trims.
std::string collapse_whitespace(std::string_view s);

/// NFKC, split on white space, strip leading/trailing punctuation (general
/// category P*). Punctuation inside a token ("50,000", "8-2-293/82") is kept.
std::vector<std::string> tokenize(std::string_view s);

/// A token with its code point offsets [begin, end) into the NFKC text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Same tokens as tokenize(); offsets index code points of nfkc_normalize(s).
std::vector<Token> tokenize_with_offsets(std::string_view s);

// UTF-8 <-> UTF-32 helpers. Ill-formed UTF-8 decodes to U+FFFD.
std::u32string to_u32(std::string_view s);
std::string to_utf8(std::u32string_view s);

bool is_white_space(char32_t c);
bool is_punctuation(char32_t c);
bool is_letter(char32_t c);
/// Decimal digit value of any Unicode Nd code point, or -1.
int digit_value(char32_t c);

}  // namespace entityscore
