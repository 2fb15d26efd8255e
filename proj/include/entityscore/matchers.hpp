#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entityscore/numbers.hpp"
#include "entityscore/script.hpp"

namespace entityscore {

enum class MatcherClass {
  DigitRun,
  Pincode,
  CurrencyAmount,
  Brand,
  ProperNoun,
  SpelledDigit,
  HouseOrPlot,
};

inline constexpr std::array<MatcherClass, 7> kAllMatcherClasses = {
    MatcherClass::DigitRun,     MatcherClass::Pincode,      MatcherClass::CurrencyAmount,
    MatcherClass::Brand,        MatcherClass::ProperNoun,   MatcherClass::SpelledDigit,
    MatcherClass::HouseOrPlot,
};

std::string_view matcher_class_name(MatcherClass c);
std::optional<MatcherClass> parse_matcher_class(std::string_view name);

struct EntityToken {
  std::string surface;
  MatcherClass matcher_class = MatcherClass::DigitRun;
  Language language = Language::Telugu;
};

struct MatchResult {
  bool hit = false;
  MatcherClass matcher_class = MatcherClass::DigitRun;
  std::string detail;
};

/// Canonical brand names and their Latin / native-script spellings. Every
/// name, canonical or alias, resolves to the same alias set.
class BrandAliasTable {
 public:
  void add(std::string canonical, std::vector<std::string> aliases);

  /// One record per line: canonical name, then aliases, tab separated.
  /// Blank lines and lines starting with '#' are skipped.
  static BrandAliasTable parse(std::string_view contents, std::string_view source = "<aliases>");
  static BrandAliasTable load(const std::filesystem::path& path);

  /// Normalized token sequences for the brand `surface` names, or nullptr.
  const std::vector<std::vector<std::string>>* aliases_for(std::string_view surface) const;
  std::size_t size() const { return brands_.size(); }

 private:
  struct Brand {
    std::string canonical;
    std::vector<std::vector<std::string>> aliases;
  };
  std::vector<Brand> brands_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Strict: a reference spelled in native-script words is credited only by
// amounts the hypothesis also spells in words. Bidirectional: any form.
enum class CurrencyMode { Strict, Bidirectional };
std::string_view currency_mode_name(CurrencyMode m);
CurrencyMode parse_currency_mode(std::string_view name);

/// Default currency tolerance, 0.5% of the reference value.
inline const Rational kCurrencyTolerance{1, 200};

struct MatcherConfig {
  std::shared_ptr<const MultiplierTable> table;  // english() when null
  std::shared_ptr<const BrandAliasTable> aliases;
  CurrencyMode currency_mode = CurrencyMode::Strict;
  Rational currency_tolerance = kCurrencyTolerance;
  double jaccard_threshold = 0.80;
  double lcs_threshold = 0.80;
  std::size_t window_slack = 1;  // proper-noun windows span k-slack .. k+slack tokens

  const MultiplierTable& number_table() const {
    return table ? *table : MultiplierTable::english();
  }
};

MatchResult match_digit_run(const EntityToken& token, std::string_view hypothesis);
MatchResult match_pincode(const EntityToken& token, std::string_view hypothesis);

/// Strict mode: a reference written only in number words is credited only by
/// hypothesis amounts also written in words. Bidirectional: any form counts.
MatchResult match_currency(const EntityToken& token, std::string_view hypothesis,
                           const MultiplierTable& table, CurrencyMode mode,
                           const Rational& tolerance = kCurrencyTolerance);

/// A brand missing from `aliases` falls back to its own surface; the result
/// detail says so.
MatchResult match_brand(const EntityToken& token, std::string_view hypothesis,
                        const BrandAliasTable& aliases);
MatchResult match_proper_noun(const EntityToken& token, std::string_view hypothesis,
                              double threshold = 0.80, std::size_t window_slack = 1);
MatchResult match_spelled_digit(const EntityToken& token, std::string_view hypothesis,
                                const MultiplierTable& table, double threshold = 0.80);
MatchResult match_house_or_plot(const EntityToken& token, std::string_view hypothesis);

std::vector<MatchResult> score_utterance(std::span<const EntityToken> tokens,
                                         std::string_view hypothesis,
                                         const MatcherConfig& config);

// Building blocks, exposed for tests.

/// Digit groups of the NFKC hypothesis, clustered where groups are separated
/// only by white space, ',' or '-'. Each cluster lists its groups in order.
std::vector<std::vector<std::string>> digit_clusters(std::string_view hypothesis);
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);
std::size_t lcs_length(std::string_view a, std::string_view b);

struct ClassTally {
  std::size_t n = 0;
  std::size_t hits = 0;
  std::optional<double> rate() const {
    if (n == 0) return std::nullopt;
    return static_cast<double>(hits) / static_cast<double>(n);
  }
};

/// Per-class tallies plus both aggregates. Classes with n = 0 are kept in
/// per_class (reported as NA) but never enter macro or micro.
struct EhrReport {
  std::map<std::string, ClassTally> per_class;
  std::optional<double> macro;  // unweighted mean of per-class rates
  std::optional<double> micro;  // pooled over entity tokens
};

struct ClassHit {
  std::string cls;
  bool hit = false;
};

EhrReport aggregate_ehr(std::span<const ClassHit> results,
                        std::span<const std::string> include_classes = {});
EhrReport aggregate_ehr(std::span<const MatchResult> results);
/// Rebuilds macro/micro from per_class tallies.
void finalize_ehr(EhrReport& report);

}  // namespace entityscore
