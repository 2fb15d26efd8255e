#include "entityscore/distance.hpp"

#include "entityscore/errors.hpp"
#include "entityscore/textnorm.hpp"

namespace entityscore {

std::string_view normalization_name(Normalization n) {
  return n == Normalization::Default ? "default" : "strict";
}

Normalization parse_normalization(std::string_view name) {
  if (name == "default") return Normalization::Default;
  if (name == "strict") return Normalization::Strict;
  throw ConfigError("unknown normalization '" + std::string(name) + "'");
}

std::vector<std::string> wer_tokens(std::string_view text, Normalization n) {
  if (n == Normalization::Default) return tokenize(casefold_normalize(text));
  std::vector<std::string> out;
  const std::string collapsed = collapse_whitespace(text);
  std::size_t start = 0;
  while (start < collapsed.size()) {
    std::size_t space = collapsed.find(' ', start);
    if (space == std::string::npos) space = collapsed.size();
    out.push_back(collapsed.substr(start, space - start));
    start = space + 1;
  }
  return out;
}

std::u32string cer_characters(std::string_view text, Normalization n) {
  if (n == Normalization::Strict) return to_u32(collapse_whitespace(text));
  std::u32string out;
  for (const auto& token : wer_tokens(text, n)) {
    if (!out.empty()) out.push_back(U' ');
    out += to_u32(token);
  }
  return out;
}

ErrorRate word_errors(std::string_view reference, std::string_view hypothesis,
                      Normalization n) {
  const auto ref = wer_tokens(reference, n);
  const auto hyp = wer_tokens(hypothesis, n);
  return ErrorRate{levenshtein(std::span<const std::string>(ref), std::span<const std::string>(hyp)),
                   ref.size()};
}

ErrorRate char_errors(std::string_view reference, std::string_view hypothesis,
                      Normalization n) {
  const auto ref = cer_characters(reference, n);
  const auto hyp = cer_characters(hypothesis, n);
  return ErrorRate{levenshtein(std::span<const char32_t>(ref), std::span<const char32_t>(hyp)),
                   ref.size()};
}

ErrorRate wer(std::string_view reference, std::string_view hypothesis, Normalization n) {
  ErrorRate r = word_errors(reference, hypothesis, n);
  if (r.reference_length == 0) throw DataError("WER undefined: reference is empty after normalization");
  return r;
}

ErrorRate cer(std::string_view reference, std::string_view hypothesis, Normalization n) {
  ErrorRate r = char_errors(reference, hypothesis, n);
  if (r.reference_length == 0) throw DataError("CER undefined: reference is empty after normalization");
  return r;
}

}  // namespace entityscore
