#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "entityscore/corpus.hpp"
#include "entityscore/scoring.hpp"

namespace entityscore {

/// Aggregate for one system on one holdout. Rates are pooled over the
/// matched pairs (sum of distances over sum of reference lengths).
struct Scorecard {
  std::string system;
  std::string holdout;
  Language language = Language::Telugu;
  std::size_t n = 0;
  std::optional<double> wer;
  std::optional<double> cer;
  std::optional<double> sfr;
  ErrorRate word_totals;
  ErrorRate char_totals;
  SfrResult sfr_totals;
  EhrReport ehr;               // by matcher class
  EhrReport ehr_by_row_class;  // by the row-level corpus class
  CurrencyMode currency_mode = CurrencyMode::Strict;
  Normalization normalization = Normalization::Default;
  std::vector<std::string> unmatched_holdout_ids;     // rows with no prediction
  std::vector<std::string> unmatched_prediction_ids;  // predictions with no row
};

struct UtteranceDetail {
  std::string id;
  std::string row_class;
  std::vector<std::string> entity_surfaces;  // aligned with score.matches
  UtteranceScore score;
};

struct SystemRun {
  Scorecard scorecard;
  std::vector<UtteranceDetail> details;  // holdout order
};

struct ScoreOptions {
  std::string holdout_name;
  Language language = Language::Telugu;
  ScoringOptions scoring;
  bool parallel = true;
  int threads = 0;
};

/// One run per system, in order of first appearance in `predictions`.
/// Throws DataError when the holdout mixes languages, disagrees with
/// options.language, or a system has no matched pairs.
std::vector<SystemRun> score_systems(std::span<const HoldoutRow> holdout,
                                     std::span<const Prediction> predictions,
                                     const ScoreOptions& options);

enum class OutputFormat { Table, Records, Csv };
OutputFormat parse_output_format(std::string_view name);

/// "0.473", or "—" for NA.
std::string format_rate(std::optional<double> v);
/// "+0.066", "-0.012", "0.000".
std::string format_delta(double v);

nlohmann::json to_json(const Scorecard& card);
Scorecard scorecard_from_json(const nlohmann::json& record);
/// Records file produced by `score --format records`.
std::vector<Scorecard> load_scorecards(const std::filesystem::path& path);

std::string render_scorecards(std::span<const Scorecard> cards, OutputFormat format);
/// JSON Lines, one record per (system, utterance).
std::string render_details(std::span<const SystemRun> runs);

inline constexpr double kScriptCollapseThreshold = 0.85;
inline constexpr std::size_t kScriptCollapseMinHoldouts = 2;

enum class Verdict { ApplyAdaptation, Contraindicated };
std::string_view verdict_name(Verdict v);

struct DiagnosticVerdict {
  Language language = Language::Telugu;
  std::vector<std::pair<std::string, std::optional<double>>> per_holdout_sfr;
  std::size_t holdouts_below = 0;
  Verdict verdict = Verdict::Contraindicated;
};

/// Recommend per-language adaptation iff vanilla SFR < 0.85 on at least two
/// holdouts. Fewer than two holdouts is a ConfigError; NA never counts as below.
DiagnosticVerdict diagnose(Language lang,
                           std::vector<std::pair<std::string, std::optional<double>>> per_holdout);
std::string render_diagnostic(const DiagnosticVerdict& verdict);

struct MetricDelta {
  std::string metric;
  std::optional<double> baseline;
  std::optional<double> value;
  std::optional<double> delta;  // value - baseline
  std::optional<double> ratio;  // value / baseline, EHR only
};

struct Comparison {
  std::string baseline;
  std::string system;
  std::string holdout;
  std::vector<MetricDelta> metrics;
};

/// Deltas of every non-baseline card against `baseline` (the first card
/// when empty). Positive WER/CER deltas are regressions; positive EHR/SFR
/// deltas are improvements. Cards must share holdout and language.
std::vector<Comparison> compare_scorecards(std::span<const Scorecard> cards,
                                           std::string_view baseline = {});
std::string render_comparison(std::span<const Comparison> comparisons, OutputFormat format);

}  // namespace entityscore
