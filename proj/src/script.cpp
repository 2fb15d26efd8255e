#include "entityscore/script.hpp"

#include <algorithm>

#include "entityscore/errors.hpp"
#include "entityscore/textnorm.hpp"

namespace entityscore {

Language parse_language(std::string_view code) {
  if (code == "te" || code == "telugu" || code == "Telugu") return Language::Telugu;
  if (code == "ta" || code == "tamil" || code == "Tamil") return Language::Tamil;
  if (code == "hi" || code == "hindi" || code == "Hindi") return Language::Hindi;
  throw ConfigError("unknown language '" + std::string(code) + "' (expected te, ta or hi)");
}

std::string_view language_code(Language lang) {
  switch (lang) {
    case Language::Telugu: return "te";
    case Language::Tamil: return "ta";
    case Language::Hindi: return "hi";
  }
  throw ConfigError("unknown language");
}

ScriptBlock script_block(Language lang) {
  switch (lang) {
    case Language::Telugu: return {lang, 0x0C00, 0x0C7F};
    case Language::Tamil: return {lang, 0x0B80, 0x0BFF};
    case Language::Hindi: return {lang, 0x0900, 0x097F};
  }
  throw ConfigError("no script block for language");
}

std::optional<double> SfrResult::value() const {
  if (letter_count == 0) return std::nullopt;
  return static_cast<double>(in_block_count) / static_cast<double>(letter_count);
}

namespace {

SfrResult count_letters(std::u32string_view text, const ScriptBlock& block,
                        std::span<const Span> excluded) {
  SfrResult out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool skip = std::any_of(excluded.begin(), excluded.end(), [i](const Span& s) {
      return i >= s.begin && i < s.end;
    });
    if (skip || !is_letter(text[i])) continue;
    ++out.letter_count;
    if (block.contains(text[i])) ++out.in_block_count;
  }
  return out;
}

}  // namespace

SfrResult sfr(std::string_view hypothesis, Language lang) {
  return count_letters(to_u32(hypothesis), script_block(lang), {});
}

std::optional<double> aggregate_sfr(std::span<const SfrResult> results) {
  std::size_t letters = 0;
  std::size_t in_block = 0;
  for (const auto& r : results) {
    letters += r.letter_count;
    in_block += r.in_block_count;
  }
  return SfrResult{letters, in_block}.value();
}

bool script_purity_check(std::string_view text, Language lang,
                         std::span<const Span> excluded_spans, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    throw ConfigError("script purity threshold must lie in [0, 1]");
  }
  const std::u32string u = to_u32(text);
  std::vector<Span> spans(excluded_spans.begin(), excluded_spans.end());
  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].begin > spans[i].end || spans[i].end > u.size()) {
      throw ValidationError("entity span [" + std::to_string(spans[i].begin) + ", " +
                            std::to_string(spans[i].end) + ") out of range for text of " +
                            std::to_string(u.size()) + " code points");
    }
    if (i > 0 && spans[i].begin < spans[i - 1].end) {
      throw ValidationError("entity spans overlap at code point " +
                            std::to_string(spans[i].begin));
    }
  }
  const auto value = count_letters(u, script_block(lang), spans).value();
  return value.has_value() && *value >= threshold;
}

}  // namespace entityscore
