#pragma once

// Command implementations behind the CLI. They return rendered text instead
// of printing so tests can compare outputs byte for byte.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entityscore/corpus.hpp"
#include "entityscore/numbers.hpp"
#include "entityscore/pipeline.hpp"
#include "entityscore/report.hpp"

namespace entityscore {

/// `<dir>/<code>.tsv` merged over the English table. A missing file is a
/// ConfigError.
std::shared_ptr<const MultiplierTable> load_number_table(const std::filesystem::path& lexicon_dir,
                                                         Language lang);

struct ScoreCommand {
  std::filesystem::path holdout;
  std::vector<std::filesystem::path> predictions;
  Language language = Language::Telugu;
  std::string holdout_name;  // defaults to the holdout file stem
  CurrencyMode currency_mode = CurrencyMode::Strict;
  Normalization normalization = Normalization::Default;
  OutputFormat format = OutputFormat::Table;
  std::optional<std::filesystem::path> lexicon_dir;  // English only when unset
  std::optional<std::filesystem::path> brands;
  bool parallel = true;
  int threads = 0;
};

struct ScoreOutput {
  std::vector<SystemRun> runs;
  std::string scorecard;  // rendered in the requested format
  std::string details;    // JSONL, one record per utterance
};

ScoreOutput cmd_score(const ScoreCommand& command);

/// Pooled SFR of every hypothesis in a predictions file.
std::optional<double> sfr_from_transcripts(const std::filesystem::path& path, Language lang);

struct DiagnoseOutput {
  DiagnosticVerdict verdict;
  std::string report;
};

DiagnoseOutput cmd_diagnose(Language lang,
                            std::vector<std::pair<std::string, std::optional<double>>> sfr_inputs);

std::string cmd_compare(const std::vector<Scorecard>& cards, const std::string& baseline,
                        OutputFormat format);

enum class PipelineStep { Route, Filter, Split, Balance, Validate, RewriteDigits };
PipelineStep parse_pipeline_step(std::string_view name);

struct PipelineCommand {
  PipelineStep step = PipelineStep::Route;
  std::uint64_t seed = 0;
  double cer_threshold = kDefaultCerThreshold;
  std::size_t per_class = 0;
  DigitRewriteMode rewrite_mode = DigitRewriteMode::Grouped;
  ValidationConfig validation;
  std::optional<std::filesystem::path> lexicon_dir;
};

struct PipelineOutput {
  std::vector<ManifestRow> rows;      // updated manifest (train rows for split)
  std::vector<ManifestRow> heldout;   // split only
  std::string audit;
};

PipelineOutput cmd_pipeline(std::vector<ManifestRow> rows, const PipelineCommand& command);

}  // namespace entityscore
