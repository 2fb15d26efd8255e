// entityscore: score ASR predictions on entity-dense holdouts and drive the
// corpus pipeline. Exit codes: 0 ok, 1 usage/config error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entityscore/commands.hpp"
#include "entityscore/errors.hpp"

namespace fs = std::filesystem;
using namespace entityscore;

namespace {

const fs::path kDataDir = ENTITYSCORE_DATA_DIR;

void write_text(const std::optional<fs::path>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path->string());
  out << text;
}

std::pair<std::string, std::string> split_assignment(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
    throw ConfigError("expected NAME=VALUE, got '" + arg + "'");
  }
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

std::optional<double> parse_sfr_value(const std::string& s) {
  if (s == "NA" || s == "—") return std::nullopt;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v >= 0.0 && v <= 1.0)) {
    throw ConfigError("SFR value must be in [0, 1] or NA, got '" + s + "'");
  }
  return v;
}

void write_manifest_to(const std::optional<fs::path>& path, const std::vector<ManifestRow>& rows) {
  if (path) {
    write_manifest(*path, rows);
  } else {
    write_manifest(std::cout, rows);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entity-aware ASR scoring and corpus pipeline"};
  app.require_subcommand(1);

  std::string lang_code;
  std::string format_name = "table";
  std::optional<fs::path> output;
  fs::path lexicon_dir = kDataDir / "lexicons";

  // score
  ScoreCommand score;
  std::string currency_mode = "strict";
  std::string normalization = "default";
  std::optional<fs::path> details_path;
  std::optional<fs::path> brands_path;
  bool serial = false;
  auto* score_cmd = app.add_subcommand("score", "Score predictions against a holdout");
  score_cmd->add_option("--holdout", score.holdout, "Holdout JSONL")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--predictions", score.predictions, "Predictions JSONL (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  score_cmd->add_option("--lang", lang_code, "te, ta or hi")->required();
  score_cmd->add_option("--holdout-name", score.holdout_name, "Label (default: file stem)");
  score_cmd->add_option("--currency-mode", currency_mode)->check(CLI::IsMember({"strict", "bidirectional"}));
  score_cmd->add_option("--normalization", normalization)->check(CLI::IsMember({"default", "strict"}));
  score_cmd->add_option("--format", format_name)->check(CLI::IsMember({"table", "records", "csv"}));
  score_cmd->add_option("--output", output, "Scorecard file (default: stdout)");
  score_cmd->add_option("--details", details_path, "Per-utterance JSONL");
  score_cmd->add_option("--brands", brands_path, "Brand alias TSV (default: bundled)");
  score_cmd->add_option("--lexicon-dir", lexicon_dir, "Number lexicon directory");
  score_cmd->add_option("--threads", score.threads, "Worker threads (0: runtime default)");
  score_cmd->add_flag("--serial", serial, "Use the serial reference kernel");

  // diagnose
  std::vector<std::string> sfr_values;
  std::vector<std::string> transcripts;
  auto* diagnose_cmd = app.add_subcommand("diagnose", "Script-collapse diagnostic from vanilla SFR");
  diagnose_cmd->add_option("--lang", lang_code)->required();
  auto* sfr_opt = diagnose_cmd->add_option("--sfr", sfr_values, "HOLDOUT=VALUE (repeatable)");
  auto* transcripts_opt =
      diagnose_cmd->add_option("--transcripts", transcripts, "HOLDOUT=PREDICTIONS.jsonl (repeatable)");
  diagnose_cmd->add_option("--output", output);

  // compare
  std::vector<fs::path> scorecard_files;
  std::string baseline;
  auto* compare_cmd = app.add_subcommand("compare", "Per-metric deltas against a baseline");
  compare_cmd->add_option("scorecards", scorecard_files, "Scorecard records (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd->add_option("--baseline", baseline, "Baseline system (default: first record)");
  compare_cmd->add_option("--format", format_name)->check(CLI::IsMember({"table", "records", "csv"}));
  compare_cmd->add_option("--output", output);

  // pipeline
  PipelineCommand pipeline;
  fs::path manifest;
  std::optional<fs::path> train_out;
  std::optional<fs::path> heldout_out;
  std::string rewrite_mode = "grouped";
  bool lexicon_given = false;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Corpus pipeline steps on a JSONL manifest");
  pipeline_cmd->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifest", manifest, "Input manifest JSONL")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", output, "Updated manifest (default: stdout, audit to stderr)");
    return sub;
  };
  auto* route_cmd = add_common(pipeline_cmd->add_subcommand("route", "Assign synthesis backends"));
  route_cmd->add_option("--seed", pipeline.seed);
  auto* filter_cmd = add_common(pipeline_cmd->add_subcommand("filter", "CER gate"));
  filter_cmd->add_option("--threshold", pipeline.cer_threshold)->check(CLI::Range(0.0, 1.0));
  auto* split_cmd = add_common(pipeline_cmd->add_subcommand("split", "Train / cartesia heldout split"));
  split_cmd->add_option("--train-out", train_out)->required();
  split_cmd->add_option("--heldout-out", heldout_out)->required();
  auto* balance_cmd = add_common(pipeline_cmd->add_subcommand("balance", "Per-class subsample"));
  balance_cmd->add_option("--per-class", pipeline.per_class)->required();
  balance_cmd->add_option("--seed", pipeline.seed);
  auto* validate_cmd = add_common(pipeline_cmd->add_subcommand("validate", "Dedup and row checks"));
  validate_cmd->add_option("--purity", pipeline.validation.purity_threshold)->check(CLI::Range(0.0, 1.0));
  validate_cmd->add_option("--min-tokens", pipeline.validation.min_tokens);
  validate_cmd->add_option("--max-tokens", pipeline.validation.max_tokens);
  auto* rewrite_cmd = add_common(pipeline_cmd->add_subcommand("rewrite-digits", "Spell digit runs"));
  rewrite_cmd->add_option("--mode", rewrite_mode)->check(CLI::IsMember({"grouped", "digit-by-digit"}));
  rewrite_cmd->add_option("--lexicon-dir", lexicon_dir)->each([&](const std::string&) { lexicon_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*score_cmd) {
      score.language = parse_language(lang_code);
      score.currency_mode = parse_currency_mode(currency_mode);
      score.normalization = parse_normalization(normalization);
      score.format = parse_output_format(format_name);
      score.lexicon_dir = lexicon_dir;
      score.parallel = !serial;
      if (brands_path) {
        score.brands = brands_path;
      } else if (fs::exists(kDataDir / "brands.tsv")) {
        score.brands = kDataDir / "brands.tsv";
      }
      const auto result = cmd_score(score);
      write_text(output, result.scorecard);
      if (details_path) write_text(details_path, result.details);
      for (const auto& run : result.runs) {
        const auto& c = run.scorecard;
        if (!c.unmatched_holdout_ids.empty() || !c.unmatched_prediction_ids.empty()) {
          std::cerr << "warning: " << c.system << ": " << c.unmatched_holdout_ids.size()
                    << " holdout ids without prediction, " << c.unmatched_prediction_ids.size()
                    << " prediction ids not in holdout\n";
        }
      }
    } else if (*diagnose_cmd) {
      const Language lang = parse_language(lang_code);
      // Holdouts are reported in command-line order across both flags.
      std::vector<std::pair<std::string, std::optional<double>>> inputs;
      std::size_t next_sfr = 0, next_transcript = 0;
      for (const CLI::Option* opt : diagnose_cmd->parse_order()) {
        if (opt == sfr_opt) {
          auto [name, value] = split_assignment(sfr_values.at(next_sfr++));
          inputs.emplace_back(name, parse_sfr_value(value));
        } else if (opt == transcripts_opt) {
          auto [name, path] = split_assignment(transcripts.at(next_transcript++));
          if (!fs::exists(path)) throw ConfigError("no such transcripts file: " + path);
          inputs.emplace_back(name, sfr_from_transcripts(path, lang));
        }
      }
      write_text(output, cmd_diagnose(lang, std::move(inputs)).report);
    } else if (*compare_cmd) {
      std::vector<Scorecard> cards;
      for (const auto& path : scorecard_files) {
        for (auto& c : load_scorecards(path)) cards.push_back(std::move(c));
      }
      write_text(output, cmd_compare(cards, baseline, parse_output_format(format_name)));
    } else if (*pipeline_cmd) {
      CLI::App* step = pipeline_cmd->get_subcommands().front();
      pipeline.step = parse_pipeline_step(step->get_name());
      pipeline.rewrite_mode =
          rewrite_mode == "grouped" ? DigitRewriteMode::Grouped : DigitRewriteMode::DigitByDigit;
      if (pipeline.step == PipelineStep::RewriteDigits && (lexicon_given || fs::exists(lexicon_dir))) {
        pipeline.lexicon_dir = lexicon_dir;
      }
      auto result = cmd_pipeline(load_manifest(manifest), pipeline);
      if (pipeline.step == PipelineStep::Split) {
        write_manifest(*train_out, result.rows);
        write_manifest(*heldout_out, result.heldout);
        write_text(output, result.audit);
      } else {
        write_manifest_to(output, result.rows);
        (output ? std::cout : std::cerr) << result.audit;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
