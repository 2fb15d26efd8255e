#include "entityscore/commands.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "entityscore/errors.hpp"
#include "entityscore/scoring.hpp"
#include "entityscore/textnorm.hpp"

namespace entityscore {

std::shared_ptr<const MultiplierTable> load_number_table(const std::filesystem::path& lexicon_dir,
                                                         Language lang) {
  const auto path = lexicon_dir / (std::string(language_code(lang)) + ".tsv");
  if (!std::filesystem::exists(path)) {
    throw ConfigError("no number lexicon for " + std::string(language_code(lang)) + " at " +
                      path.string());
  }
  try {
    auto table = MultiplierTable::load(path, std::string(language_code(lang)));
    return std::make_shared<const MultiplierTable>(table.merged_with(MultiplierTable::english()));
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------

ScoreOutput cmd_score(const ScoreCommand& command) {
  if (command.predictions.empty()) throw ConfigError("no predictions file given");
  const auto holdout = load_holdout(command.holdout, command.language);

  std::vector<Prediction> predictions;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& path : command.predictions) {
    for (auto& p : load_predictions(path)) {
      if (!seen.emplace(p.system, p.id).second) {
        throw DataError(path.string() + ":" + std::to_string(p.line) + ": duplicate prediction '" +
                        p.id + "' for system '" + p.system + "'");
      }
      predictions.push_back(std::move(p));
    }
  }

  ScoreOptions options;
  options.holdout_name =
      command.holdout_name.empty() ? command.holdout.stem().string() : command.holdout_name;
  options.language = command.language;
  options.parallel = command.parallel;
  options.threads = command.threads;
  options.scoring.normalization = command.normalization;
  options.scoring.matcher.currency_mode = command.currency_mode;
  if (command.lexicon_dir) {
    options.scoring.matcher.table = load_number_table(*command.lexicon_dir, command.language);
  }
  if (command.brands) {
    try {
      options.scoring.matcher.aliases =
          std::make_shared<const BrandAliasTable>(BrandAliasTable::load(*command.brands));
    } catch (const DataError& e) {
      throw ConfigError(e.what());
    }
  }

  ScoreOutput out;
  out.runs = score_systems(holdout, predictions, options);
  std::vector<Scorecard> cards;
  for (const auto& run : out.runs) cards.push_back(run.scorecard);
  out.scorecard = render_scorecards(cards, command.format);
  out.details = render_details(out.runs);
  return out;
}

std::optional<double> sfr_from_transcripts(const std::filesystem::path& path, Language lang) {
  std::vector<SfrResult> results;
  for (const auto& p : load_predictions(path)) results.push_back(sfr(p.hypothesis, lang));
  return aggregate_sfr(results);
}

DiagnoseOutput cmd_diagnose(Language lang,
                            std::vector<std::pair<std::string, std::optional<double>>> sfr_inputs) {
  DiagnoseOutput out;
  out.verdict = diagnose(lang, std::move(sfr_inputs));
  out.report = render_diagnostic(out.verdict);
  return out;
}

std::string cmd_compare(const std::vector<Scorecard>& cards, const std::string& baseline,
                        OutputFormat format) {
  return render_comparison(compare_scorecards(cards, baseline), format);
}

// ---------------------------------------------------------------------------
// Pipeline

PipelineStep parse_pipeline_step(std::string_view name) {
  if (name == "route") return PipelineStep::Route;
  if (name == "filter") return PipelineStep::Filter;
  if (name == "split") return PipelineStep::Split;
  if (name == "balance") return PipelineStep::Balance;
  if (name == "validate") return PipelineStep::Validate;
  if (name == "rewrite-digits") return PipelineStep::RewriteDigits;
  throw ConfigError("unknown pipeline step '" + std::string(name) + "'");
}

namespace {

std::string row_ref(const ManifestRow& row) {
  return "row '" + row.id + "' (line " + std::to_string(row.line) + ")";
}

std::string system_label(const ManifestRow& row) {
  return row.synth_system ? std::string(synth_system_name(*row.synth_system)) : "unrouted";
}

// Rows grouped by language and class, one column per value of `key`.
template <typename Key>
std::string crosstab(std::span<const ManifestRow> rows, const char* title, Key key) {
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::size_t>> cells;
  std::set<std::string> columns;
  for (const auto& r : rows) {
    const std::string k = key(r);
    columns.insert(k);
    ++cells[{std::string(language_code(r.language)), r.corpus_class}][k];
  }
  std::ostringstream out;
  out << "lang\tclass";
  for (const auto& c : columns) out << '\t' << c;
  out << "\ttotal\n";
  for (const auto& [group, counts] : cells) {
    std::size_t total = 0;
    out << group.first << '\t' << group.second;
    for (const auto& c : columns) {
      const std::size_t n = counts.count(c) ? counts.at(c) : 0;
      total += n;
      out << '\t' << n;
    }
    out << '\t' << total << '\n';
  }
  return std::string(title) + "\n" + out.str();
}

std::string status_table(std::span<const ManifestRow> rows) {
  return crosstab(rows, "status", [](const ManifestRow& r) {
    return std::string(row_status_name(r.status));
  });
}

std::size_t count_digit_runs(std::string_view text) {
  std::size_t runs = 0;
  bool in_run = false;
  for (char32_t c : to_u32(text)) {
    const bool digit = digit_value(c) >= 0;
    if (digit && !in_run) ++runs;
    in_run = digit;
  }
  return runs;
}

}  // namespace

PipelineOutput cmd_pipeline(std::vector<ManifestRow> rows, const PipelineCommand& command) {
  PipelineOutput out;
  std::ostringstream audit;
  switch (command.step) {
    case PipelineStep::Route: {
      out.rows = route_manifest(std::move(rows), RouterPolicy::standard(command.seed));
      audit << "routed " << out.rows.size() << " rows with seed " << command.seed << "\n";
      audit << crosstab(out.rows, "backend", system_label);
      break;
    }
    case PipelineStep::Filter: {
      std::unordered_map<std::string, std::size_t> order;
      for (std::size_t i = 0; i < rows.size(); ++i) order.emplace(rows[i].id, i);
      auto result = apply_cer_filter(std::move(rows), command.cer_threshold);
      char threshold[32];
      std::snprintf(threshold, sizeof threshold, "%.3f", command.cer_threshold);
      audit << "cer threshold " << threshold << ": accepted " << result.accepted.size()
            << ", filtered_out " << result.rejected.size() << "\n";
      for (const auto& r : result.rejected) {
        audit << "filtered_out\t" << r.id << "\tcer=" << format_rate(r.cer_against_source) << "\n";
      }
      out.rows = std::move(result.accepted);
      for (auto& r : result.rejected) out.rows.push_back(std::move(r));
      std::stable_sort(out.rows.begin(), out.rows.end(),
                       [&](const ManifestRow& a, const ManifestRow& b) {
                         return order.at(a.id) < order.at(b.id);
                       });
      audit << status_table(out.rows);
      break;
    }
    case PipelineStep::Split: {
      // Rows the CER gate rejected take no part in the split.
      std::vector<ManifestRow> accepted;
      std::size_t excluded = 0;
      for (auto& r : rows) {
        if (r.status == RowStatus::FilteredOut) {
          ++excluded;
        } else {
          accepted.push_back(std::move(r));
        }
      }
      auto result = split_heldout(std::move(accepted));
      if (excluded > 0) audit << "excluded " << excluded << " filtered_out rows\n";
      audit << "train " << result.train.size() << ", heldout " << result.heldout.size() << "\n";
      audit << format_synth_counts(result.counts);
      for (const auto& w : result.warnings) audit << "warning: " << w << "\n";
      out.rows = std::move(result.train);
      out.heldout = std::move(result.heldout);
      break;
    }
    case PipelineStep::Balance: {
      const std::size_t before = rows.size();
      out.rows = class_balance(rows, command.per_class, command.seed);
      audit << "balanced " << before << " rows to " << out.rows.size() << " (target "
            << command.per_class << " per class, seed " << command.seed << ")\n";
      audit << crosstab(out.rows, "kept", [](const ManifestRow&) { return std::string("n"); });
      break;
    }
    case PipelineStep::Validate: {
      std::set<std::string> kept_ids;
      const auto before = rows;
      out.rows = dedup_rows(std::move(rows));
      for (const auto& r : out.rows) kept_ids.insert(r.id);
      std::size_t removed = 0;
      for (const auto& r : before) {
        if (kept_ids.count(r.id) == 0) {
          ++removed;
          audit << "duplicate\t" << r.id << "\tline " << r.line << "\n";
        }
      }
      std::size_t violations = 0;
      std::size_t failing_rows = 0;
      for (const auto& r : out.rows) {
        const auto found = validate_corpus_row(r, command.validation);
        if (!found.empty()) ++failing_rows;
        for (const auto& v : found) {
          ++violations;
          audit << violation_kind_name(v.kind) << '\t' << r.id << "\tline " << r.line << '\t'
                << v.message << "\n";
        }
      }
      audit << "validated " << out.rows.size() << " rows: " << removed << " duplicates removed, "
            << violations << " violations in " << failing_rows << " rows\n";
      break;
    }
    case PipelineStep::RewriteDigits: {
      std::map<Language, std::shared_ptr<const MultiplierTable>> tables;
      std::size_t rewritten = 0, runs_before = 0, runs_after = 0;
      for (auto& r : rows) {
        auto& table = tables[r.language];
        if (!table) {
          table = command.lexicon_dir
                      ? load_number_table(*command.lexicon_dir, r.language)
                      : std::shared_ptr<const MultiplierTable>(std::shared_ptr<void>{},
                                                               &MultiplierTable::english());
        }
        runs_before += count_digit_runs(r.text);
        std::string text;
        try {
          text = rewrite_digit_runs(r.text, *table, command.rewrite_mode);
        } catch (const std::exception& e) {
          throw DataError(row_ref(r) + ": " + e.what());
        }
        if (text != r.text) ++rewritten;
        r.text = std::move(text);
        runs_after += count_digit_runs(r.text);
      }
      audit << "rewrote " << rewritten << " of " << rows.size() << " rows ("
            << (command.rewrite_mode == DigitRewriteMode::Grouped ? "grouped" : "digit-by-digit")
            << "); digit runs " << runs_before << " -> " << runs_after << "\n";
      out.rows = std::move(rows);
      break;
    }
  }
  out.audit = audit.str();
  return out;
}

}  // namespace entityscore
