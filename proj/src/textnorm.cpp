#include "entityscore/textnorm.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace entityscore {
namespace {

const icu::Normalizer2& nfkc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status) || nfkc == nullptr) {
    throw std::runtime_error("ICU NFKC normalizer unavailable");
  }
  return *nfkc;
}

icu::UnicodeString nfkc_unicode(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfkc_instance().normalize(in, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error("ICU normalization failed");
  }
  return out;
}

std::string to_std(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

icu::UnicodeString from_std(std::string_view s) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

}  // namespace

std::u32string to_u32(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

std::string to_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) {
      out += "\xEF\xBF\xBD";
    } else {
      out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    }
  }
  return out;
}

bool is_white_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_punctuation(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

bool is_letter(char32_t c) {
  return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_L_MASK) != 0;
}

int digit_value(char32_t c) {
  if (u_charType(static_cast<UChar32>(c)) != U_DECIMAL_DIGIT_NUMBER) return -1;
  return u_charDigitValue(static_cast<UChar32>(c));
}

std::string nfkc_normalize(std::string_view s) {
  if (s.empty()) return {};
  return to_std(nfkc_unicode(from_std(s)));
}

std::string casefold_normalize(std::string_view s) {
  icu::UnicodeString current = nfkc_unicode(from_std(s));
  // NFKC and folding do not commute for a handful of code points; a few
  // rounds reach the fixed point.
  for (int round = 0; round < 4; ++round) {
    icu::UnicodeString next = current;
    next.foldCase(U_FOLD_CASE_DEFAULT);
    next = nfkc_unicode(next);
    if (next == current) break;
    current = std::move(next);
  }
  return to_std(current);
}

std::string collapse_whitespace(std::string_view s) {
  const std::u32string in = to_u32(s);
  std::u32string out;
  out.reserve(in.size());
  bool pending_space = false;
  for (char32_t c : in) {
    if (is_white_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return to_utf8(out);
}

NormalizedText NormalizedText::from(std::string_view s) {
  return NormalizedText{std::string(s), collapse_whitespace(nfkc_normalize(s))};
}

std::vector<Token> tokenize_with_offsets(std::string_view s) {
  const std::u32string text = to_u32(nfkc_normalize(s));
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_white_space(text[i])) ++i;
    std::size_t begin = i;
    while (i < text.size() && !is_white_space(text[i])) ++i;
    std::size_t end = i;
    while (begin < end && is_punctuation(text[begin])) ++begin;
    while (end > begin && is_punctuation(text[end - 1])) --end;
    if (begin < end) {
      tokens.push_back(
          Token{to_utf8(std::u32string_view(text).substr(begin, end - begin)), begin, end});
    }
  }
  return tokens;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  for (auto& t : tokenize_with_offsets(s)) out.push_back(std::move(t.text));
  return out;
}

}  // namespace entityscore
