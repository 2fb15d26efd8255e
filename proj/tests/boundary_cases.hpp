#pragma once

// Named matcher boundary cases, shared by the unit tests and the acceptance
// binary. Expected outcomes are worked out by hand in the comments.

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "entityscore/commands.hpp"
#include "entityscore/matchers.hpp"

namespace boundary {

using entityscore::CurrencyMode;
using entityscore::MatcherClass;

struct Case {
  const char* name;
  MatcherClass cls;
  const char* reference;
  const char* hypothesis;
  CurrencyMode mode;
  bool hit;
};

inline const std::vector<Case>& cases() {
  using M = MatcherClass;
  constexpr auto S = CurrencyMode::Strict;
  constexpr auto B = CurrencyMode::Bidirectional;
  static const std::vector<Case> kCases = {
      {"digit_run_exact", M::DigitRun, "9876543210", "call 9876543210 now", S, true},
      {"digit_run_space_grouped", M::DigitRun, "9876543210", "call 98765 43210 now", S, true},
      {"digit_run_off_by_one", M::DigitRun, "9876543210", "call 9876543211 now", S, false},
      {"digit_run_inside_longer_run", M::DigitRun, "98765", "9876543210", S, false},
      {"digit_run_native_digits", M::DigitRun, "9876543210", "నంబర్ ౯౮౭౬౫౪౩౨౧౦", S, true},
      {"pincode_exact", M::Pincode, "500033", "hyderabad 500033", S, true},
      {"pincode_five_digits", M::Pincode, "500033", "hyderabad 50003", S, false},
      {"pincode_fullwidth", M::Pincode, "500033", "hyderabad ５０００３３", S, true},
      {"pincode_seven_digit_run", M::Pincode, "500033", "hyderabad 5000331", S, false},
      {"currency_lakh_vs_western_words", M::CurrencyAmount, "5 lakh", "five hundred thousand", S, true},
      // 2500 / 500000 = 0.005 exactly: inclusive.
      {"currency_tolerance_inclusive", M::CurrencyAmount, "500000", "502500", S, true},
      {"currency_tolerance_exceeded", M::CurrencyAmount, "500000", "502501", S, false},
      // 100 / 50000 = 0.002 and 300 / 50000 = 0.006.
      {"currency_within_half_percent", M::CurrencyAmount, "50000 rupees", "₹50,100", S, true},
      {"currency_beyond_half_percent", M::CurrencyAmount, "50000 rupees", "₹50,300", S, false},
      {"currency_english_words_strict", M::CurrencyAmount, "five hundred thousand", "500000", S, true},
      {"currency_native_words_strict", M::CurrencyAmount, "ఇరవై లక్ష", "2000000", S, false},
      {"currency_native_words_bidirectional", M::CurrencyAmount, "ఇరవై లక్ష", "2000000", B, true},
      {"currency_native_words_both_sides", M::CurrencyAmount, "ఇరవై లక్ష", "ఇరవై లక్షలు", S, true},
      // Only "5 lakh" survives: 500000 vs 542000.
      {"currency_partial_parse_miss", M::CurrencyAmount, "5 lakh 42 thousand", "5 lakh and change", S, false},
      {"currency_partial_parse_hit", M::CurrencyAmount, "₹2,500", "paid rs 2,500 and 3 more", S, true},
      {"brand_native_alias", M::Brand, "Flipkart", "ఫ్లిప్‌కార్ట్ లో కొన్నాను", S, true},
      {"brand_casefold", M::Brand, "Paytm", "pay via PAYTM please", S, true},
      {"brand_token_boundary", M::Brand, "Paytm", "pay via paytime please", S, false},
      {"brand_mixed_script_output", M::Brand, "Swiggy", "నేను Swiggy లో ఆర్డర్ చేశాను", S, true},
      // {a,b,c,d,e} vs window {a,b,c,d}: 4/5.
      {"proper_noun_jaccard_boundary", M::ProperNoun, "a b c d e", "x a b c d", S, true},
      // Best window shares 3 of 5 distinct tokens: 3/5.
      {"proper_noun_below_threshold", M::ProperNoun, "a b c d", "a b c e", S, false},
      {"proper_noun_full", M::ProperNoun, "Rajesh Kumar", "call rajesh kumar today", S, true},
      {"proper_noun_wrong_script", M::ProperNoun, "Jubilee Hills", "జూబ్లీ హిల్స్", S, false},
      // LCS("54235", "5425") = 4, 4/5.
      {"spelled_digit_lcs_boundary", M::SpelledDigit, "five four two three five", "five four two five", S, true},
      {"spelled_digit_below_threshold", M::SpelledDigit, "54235", "542", S, false},
      {"spelled_digit_mixed_forms", M::SpelledDigit, "nine eight seven six", "9 eight 7 six", S, true},
      {"house_exact", M::HouseOrPlot, "8-2-293/82", "h.no 8-2-293/82 road", S, true},
      {"house_casefold", M::HouseOrPlot, "Plot 42", "at plot 42, jubilee hills", S, true},
      {"house_token_boundary", M::HouseOrPlot, "Plot 42", "at plot 421", S, false},
      {"empty_hypothesis_digit_run", M::DigitRun, "9876543210", "", S, false},
      {"empty_hypothesis_currency", M::CurrencyAmount, "5 lakh", "", B, false},
      {"empty_hypothesis_proper_noun", M::ProperNoun, "Rajesh Kumar", "", S, false},
      {"empty_hypothesis_spelled_digit", M::SpelledDigit, "54235", "", S, false},
  };
  return kCases;
}

inline entityscore::MatcherConfig config(CurrencyMode mode) {
  const std::filesystem::path data = ENTITYSCORE_DATA_DIR;
  static const auto table = entityscore::load_number_table(data / "lexicons", entityscore::Language::Telugu);
  static const auto aliases = std::make_shared<const entityscore::BrandAliasTable>(
      entityscore::BrandAliasTable::load(data / "brands.tsv"));
  entityscore::MatcherConfig c;
  c.table = table;
  c.aliases = aliases;
  c.currency_mode = mode;
  return c;
}

inline entityscore::MatchResult run(const Case& c) {
  const entityscore::EntityToken token{c.reference, c.cls, entityscore::Language::Telugu};
  return entityscore::score_utterance(std::span(&token, 1), c.hypothesis, config(c.mode)).front();
}

}  // namespace boundary
