#include "entityscore/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "entityscore/errors.hpp"
#include "entityscore/textnorm.hpp"

namespace entityscore {

using nlohmann::json;

namespace {

const std::vector<std::string>& corpus_classes() {
  static const std::vector<std::string> kClasses = {"addresses", "brands", "codemix",
                                                    "currency",  "digits", "proper_nouns"};
  return kClasses;
}

std::vector<std::string> matcher_class_names() {
  std::vector<std::string> out;
  for (MatcherClass c : kAllMatcherClasses) out.emplace_back(matcher_class_name(c));
  return out;
}

std::string row_class_label(const HoldoutRow& row) {
  return row.entity_class.empty() ? "unclassified" : row.entity_class;
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

json rate_json(std::optional<double> v) { return v ? json(round3(*v)) : json(nullptr); }

std::optional<double> rate_from(const json& record, const char* field) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

// Aligned plain-text table; widths count code points so "—" and Indic
// labels line up with ASCII.
class TextTable {
 public:
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
      if (widths.size() < row.size()) widths.resize(row.size(), 0);
      for (std::size_t i = 0; i < row.size(); ++i) {
        widths[i] = std::max(widths[i], to_u32(row[i]).size());
      }
    }
    std::string out;
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        line += row[i];
        if (i + 1 < row.size()) line.append(widths[i] - to_u32(row[i]).size() + 2, ' ');
      }
      out += line + "\n";
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
  return out;
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "records") return OutputFormat::Records;
  if (name == "csv") return OutputFormat::Csv;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

std::string format_rate(std::optional<double> v) {
  if (!v) return "—";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", round3(*v));
  return buf;
}

std::string format_delta(double v) {
  const double r = round3(v);
  if (r == 0.0) return "0.000";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.3f", r);
  return buf;
}

// ---------------------------------------------------------------------------
// Scoring

std::vector<SystemRun> score_systems(std::span<const HoldoutRow> holdout,
                                     std::span<const Prediction> predictions,
                                     const ScoreOptions& options) {
  for (const auto& row : holdout) {
    if (row.language != holdout.front().language) {
      throw DataError("holdout mixes languages: row '" + row.id + "' is " +
                      std::string(language_code(row.language)) + ", row '" + holdout.front().id +
                      "' is " + std::string(language_code(holdout.front().language)));
    }
    if (row.language != options.language) {
      throw DataError("holdout row '" + row.id + "' is " + std::string(language_code(row.language)) +
                      " but scoring was requested for " +
                      std::string(language_code(options.language)));
    }
  }

  std::vector<std::string> systems;
  std::unordered_map<std::string, std::vector<const Prediction*>> by_system;
  for (const auto& p : predictions) {
    auto [it, inserted] = by_system.try_emplace(p.system);
    if (inserted) systems.push_back(p.system);
    it->second.push_back(&p);
  }
  if (systems.empty()) throw DataError("no predictions to score");

  std::unordered_map<std::string, const HoldoutRow*> rows_by_id;
  for (const auto& row : holdout) rows_by_id.emplace(row.id, &row);

  std::vector<SystemRun> runs;
  for (const auto& system : systems) {
    SystemRun run;
    Scorecard& card = run.scorecard;
    card.system = system;
    card.holdout = options.holdout_name;
    card.language = options.language;
    card.currency_mode = options.scoring.matcher.currency_mode;
    card.normalization = options.scoring.normalization;

    std::unordered_map<std::string, const Prediction*> by_id;
    for (const Prediction* p : by_system[system]) {
      by_id.emplace(p->id, p);
      if (rows_by_id.count(p->id) == 0) card.unmatched_prediction_ids.push_back(p->id);
    }
    std::vector<ScoringPair> pairs;
    for (const auto& row : holdout) {
      auto it = by_id.find(row.id);
      if (it == by_id.end()) {
        card.unmatched_holdout_ids.push_back(row.id);
      } else {
        pairs.push_back({&row, it->second});
      }
    }
    if (pairs.empty()) {
      throw DataError("system '" + system + "' has no predictions matching holdout ids");
    }

    const auto scores = options.parallel
                            ? score_pairs_parallel(pairs, options.scoring, options.threads)
                            : score_pairs_serial(pairs, options.scoring);

    std::vector<ClassHit> by_matcher;
    std::vector<ClassHit> by_row;
    std::vector<std::string> row_classes = corpus_classes();
    std::vector<SfrResult> sfrs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const HoldoutRow& row = *pairs[i].row;
      const UtteranceScore& s = scores[i];
      card.word_totals.distance += s.words.distance;
      card.word_totals.reference_length += s.words.reference_length;
      card.char_totals.distance += s.chars.distance;
      card.char_totals.reference_length += s.chars.reference_length;
      sfrs.push_back(s.sfr);
      const std::string label = row_class_label(row);
      if (std::find(row_classes.begin(), row_classes.end(), label) == row_classes.end()) {
        row_classes.push_back(label);
      }
      for (const auto& m : s.matches) {
        by_matcher.push_back({std::string(matcher_class_name(m.matcher_class)), m.hit});
        by_row.push_back({label, m.hit});
      }
      UtteranceDetail detail{row.id, label, {}, s};
      for (const auto& t : row.entity_tokens) detail.entity_surfaces.push_back(t.surface);
      run.details.push_back(std::move(detail));
    }
    card.n = pairs.size();
    card.wer = card.word_totals.rate();
    card.cer = card.char_totals.rate();
    for (const auto& r : sfrs) {
      card.sfr_totals.letter_count += r.letter_count;
      card.sfr_totals.in_block_count += r.in_block_count;
    }
    card.sfr = aggregate_sfr(sfrs);
    const auto matcher_names = matcher_class_names();
    card.ehr = aggregate_ehr(by_matcher, matcher_names);
    card.ehr_by_row_class = aggregate_ehr(by_row, row_classes);
    runs.push_back(std::move(run));
  }
  return runs;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json ehr_json(const EhrReport& r) {
  json per = json::object();
  for (const auto& [cls, t] : r.per_class) {
    per[cls] = {{"n", t.n}, {"hits", t.hits}, {"ehr", rate_json(t.rate())}};
  }
  return per;
}

EhrReport ehr_from(const json& record, const char* field) {
  EhrReport r;
  if (auto it = record.find(field); it != record.end() && it->is_object()) {
    for (const auto& [cls, t] : it->items()) {
      r.per_class[cls] = ClassTally{t.value("n", std::size_t{0}), t.value("hits", std::size_t{0})};
    }
  }
  finalize_ehr(r);
  return r;
}

}  // namespace

json to_json(const Scorecard& c) {
  return json{{"system", c.system},
              {"holdout", c.holdout},
              {"language", language_code(c.language)},
              {"n", c.n},
              {"ehr_micro", rate_json(c.ehr.micro)},
              {"ehr_macro", rate_json(c.ehr.macro)},
              {"wer", rate_json(c.wer)},
              {"cer", rate_json(c.cer)},
              {"sfr", rate_json(c.sfr)},
              {"ehr_per_class", ehr_json(c.ehr)},
              {"ehr_per_row_class", ehr_json(c.ehr_by_row_class)},
              {"word_errors", c.word_totals.distance},
              {"reference_words", c.word_totals.reference_length},
              {"char_errors", c.char_totals.distance},
              {"reference_chars", c.char_totals.reference_length},
              {"letters", c.sfr_totals.letter_count},
              {"letters_in_block", c.sfr_totals.in_block_count},
              {"currency_mode", currency_mode_name(c.currency_mode)},
              {"normalization", normalization_name(c.normalization)},
              {"unmatched_holdout_ids", c.unmatched_holdout_ids},
              {"unmatched_prediction_ids", c.unmatched_prediction_ids}};
}

Scorecard scorecard_from_json(const json& r) {
  if (!r.is_object()) throw DataError("scorecard record is not an object");
  Scorecard c;
  try {
    c.system = r.at("system").get<std::string>();
    c.holdout = r.value("holdout", std::string{});
    c.language = parse_language(r.at("language").get<std::string>());
    c.n = r.value("n", std::size_t{0});
    c.wer = rate_from(r, "wer");
    c.cer = rate_from(r, "cer");
    c.sfr = rate_from(r, "sfr");
    c.word_totals = {r.value("word_errors", std::size_t{0}), r.value("reference_words", std::size_t{0})};
    c.char_totals = {r.value("char_errors", std::size_t{0}), r.value("reference_chars", std::size_t{0})};
    c.sfr_totals = {r.value("letters", std::size_t{0}), r.value("letters_in_block", std::size_t{0})};
    c.ehr = ehr_from(r, "ehr_per_class");
    c.ehr_by_row_class = ehr_from(r, "ehr_per_row_class");
    // Stored aggregates win over recomputation so hand-written records work.
    if (r.contains("ehr_micro")) c.ehr.micro = rate_from(r, "ehr_micro");
    if (r.contains("ehr_macro")) c.ehr.macro = rate_from(r, "ehr_macro");
    c.currency_mode = parse_currency_mode(r.value("currency_mode", std::string("strict")));
    c.normalization = parse_normalization(r.value("normalization", std::string("default")));
    c.unmatched_holdout_ids = r.value("unmatched_holdout_ids", std::vector<std::string>{});
    c.unmatched_prediction_ids = r.value("unmatched_prediction_ids", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed scorecard record: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed scorecard record: ") + e.what());
  }
  return c;
}

std::vector<Scorecard> load_scorecards(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<Scorecard> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(scorecard_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void per_class_table(std::ostringstream& out, std::span<const Scorecard> cards,
                     const char* title, EhrReport Scorecard::*field) {
  std::set<std::string> seen;
  std::vector<std::string> classes;
  for (const auto& c : cards) {
    for (const auto& [cls, t] : (c.*field).per_class) {
      if (seen.insert(cls).second) classes.push_back(cls);
    }
  }
  TextTable t;
  std::vector<std::string> header = {title, "n"};
  for (const auto& c : cards) header.push_back(c.system + " EHR");
  t.add(header);
  for (const auto& cls : classes) {
    const auto& first = (cards.front().*field).per_class;
    const std::size_t n = first.count(cls) ? first.at(cls).n : 0;
    std::vector<std::string> row = {cls, std::to_string(n)};
    for (const auto& c : cards) {
      const auto& per = (c.*field).per_class;
      const ClassTally tally = per.count(cls) ? per.at(cls) : ClassTally{};
      std::string cell = format_rate(tally.rate());
      if (tally.n != n) cell += " (n=" + std::to_string(tally.n) + ")";
      row.push_back(std::move(cell));
    }
    t.add(std::move(row));
  }
  std::vector<std::string> micro = {"micro (headline)", ""};
  std::vector<std::string> macro = {"macro", ""};
  for (const auto& c : cards) {
    micro.push_back(format_rate((c.*field).micro));
    macro.push_back(format_rate((c.*field).macro));
  }
  t.add(std::move(micro));
  t.add(std::move(macro));
  out << t.render();
}

}  // namespace

std::string render_scorecards(std::span<const Scorecard> cards, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Records) {
    for (const auto& c : cards) out << to_json(c).dump() << '\n';
    return out.str();
  }
  if (format == OutputFormat::Csv) {
    out << "system,holdout,language,n,ehr_micro,ehr_macro,wer,cer,sfr,currency_mode,normalization";
    for (MatcherClass m : kAllMatcherClasses) out << ",ehr_" << matcher_class_name(m);
    out << '\n';
    auto cell = [](std::optional<double> v) { return v ? format_rate(v) : std::string("NA"); };
    for (const auto& c : cards) {
      out << csv_field(c.system) << ',' << csv_field(c.holdout) << ',' << language_code(c.language)
          << ',' << c.n << ',' << cell(c.ehr.micro) << ',' << cell(c.ehr.macro) << ','
          << cell(c.wer) << ',' << cell(c.cer) << ',' << cell(c.sfr) << ','
          << currency_mode_name(c.currency_mode) << ',' << normalization_name(c.normalization);
      for (MatcherClass m : kAllMatcherClasses) {
        auto it = c.ehr.per_class.find(std::string(matcher_class_name(m)));
        out << ',' << cell(it == c.ehr.per_class.end() ? std::nullopt : it->second.rate());
      }
      out << '\n';
    }
    return out.str();
  }

  if (cards.empty()) return {};
  TextTable summary;
  summary.add({"System", "Holdout", "Lang", "n", "EHR", "EHR macro", "WER", "CER", "SFR",
               "currency", "normalization"});
  for (const auto& c : cards) {
    summary.add({c.system, c.holdout, std::string(language_code(c.language)), std::to_string(c.n),
                 format_rate(c.ehr.micro), format_rate(c.ehr.macro), format_rate(c.wer),
                 format_rate(c.cer), format_rate(c.sfr), std::string(currency_mode_name(c.currency_mode)),
                 std::string(normalization_name(c.normalization))});
  }
  out << summary.render() << '\n';
  per_class_table(out, cards, "Row class", &Scorecard::ehr_by_row_class);
  out << '\n';
  per_class_table(out, cards, "Matcher class", &Scorecard::ehr);
  for (const auto& c : cards) {
    if (!c.unmatched_holdout_ids.empty()) {
      out << '\n' << c.system << ": " << c.unmatched_holdout_ids.size()
          << " holdout ids without prediction: " << join_ids(c.unmatched_holdout_ids) << '\n';
    }
    if (!c.unmatched_prediction_ids.empty()) {
      out << '\n' << c.system << ": " << c.unmatched_prediction_ids.size()
          << " prediction ids not in holdout: " << join_ids(c.unmatched_prediction_ids) << '\n';
    }
  }
  return out.str();
}

std::string render_details(std::span<const SystemRun> runs) {
  std::ostringstream out;
  for (const auto& run : runs) {
    for (const auto& d : run.details) {
      json matches = json::array();
      for (std::size_t i = 0; i < d.score.matches.size(); ++i) {
        const auto& m = d.score.matches[i];
        matches.push_back({{"surface", i < d.entity_surfaces.size() ? d.entity_surfaces[i] : ""},
                           {"matcher_class", matcher_class_name(m.matcher_class)},
                           {"hit", m.hit},
                           {"detail", m.detail}});
      }
      json record = {{"system", run.scorecard.system},
                     {"id", d.id},
                     {"row_class", d.row_class},
                     {"word_errors", d.score.words.distance},
                     {"reference_words", d.score.words.reference_length},
                     {"char_errors", d.score.chars.distance},
                     {"reference_chars", d.score.chars.reference_length},
                     {"letters", d.score.sfr.letter_count},
                     {"letters_in_block", d.score.sfr.in_block_count},
                     {"sfr", rate_json(d.score.sfr.value())},
                     {"matches", std::move(matches)}};
      out << record.dump() << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Diagnostic

std::string_view verdict_name(Verdict v) {
  return v == Verdict::ApplyAdaptation ? "apply_adaptation" : "contraindicated";
}

DiagnosticVerdict diagnose(Language lang,
                           std::vector<std::pair<std::string, std::optional<double>>> per_holdout) {
  if (per_holdout.size() < kScriptCollapseMinHoldouts) {
    throw ConfigError("the script-collapse diagnostic needs at least " +
                      std::to_string(kScriptCollapseMinHoldouts) + " holdouts, got " +
                      std::to_string(per_holdout.size()));
  }
  DiagnosticVerdict out;
  out.language = lang;
  for (const auto& [name, value] : per_holdout) {
    if (value && *value < kScriptCollapseThreshold) ++out.holdouts_below;
  }
  out.per_holdout_sfr = std::move(per_holdout);
  out.verdict = out.holdouts_below >= kScriptCollapseMinHoldouts ? Verdict::ApplyAdaptation
                                                                 : Verdict::Contraindicated;
  return out;
}

std::string render_diagnostic(const DiagnosticVerdict& v) {
  std::ostringstream out;
  TextTable t;
  t.add({"Holdout", "SFR", "below 0.85"});
  for (const auto& [name, value] : v.per_holdout_sfr) {
    t.add({name, format_rate(value),
           value && *value < kScriptCollapseThreshold ? "yes" : "no"});
  }
  out << "language: " << language_code(v.language) << '\n' << t.render();
  out << "verdict: " << verdict_name(v.verdict) << '\n';
  out << "rule: adapt only when vanilla SFR < 0.85 on >= 2 holdouts; " << v.holdouts_below
      << " of " << v.per_holdout_sfr.size() << " holdouts are below\n";
  if (v.verdict == Verdict::ApplyAdaptation) {
    out << "recommendation: script collapse detected; a per-language adapter is indicated\n";
  } else {
    out << "recommendation: no script collapse; per-language adaptation is contraindicated\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Comparison

std::vector<Comparison> compare_scorecards(std::span<const Scorecard> cards,
                                           std::string_view baseline) {
  if (cards.size() < 2) throw ConfigError("compare needs at least two scorecards");
  const Scorecard* base = &cards.front();
  if (!baseline.empty()) {
    auto it = std::find_if(cards.begin(), cards.end(),
                           [&](const Scorecard& c) { return c.system == baseline; });
    if (it == cards.end()) {
      throw ConfigError("baseline system '" + std::string(baseline) + "' not among scorecards");
    }
    base = &*it;
  }
  for (const auto& c : cards) {
    if (c.holdout != base->holdout || c.language != base->language) {
      throw DataError("cannot compare '" + c.system + "' on " + c.holdout + "/" +
                      std::string(language_code(c.language)) + " with baseline on " + base->holdout +
                      "/" + std::string(language_code(base->language)));
    }
  }
  auto metric = [](std::string name, std::optional<double> b, std::optional<double> v, bool ratio) {
    MetricDelta d{std::move(name), b, v, std::nullopt, std::nullopt};
    if (b && v) {
      d.delta = *v - *b;
      if (ratio && *b != 0.0) d.ratio = *v / *b;
    }
    return d;
  };
  std::vector<Comparison> out;
  for (const auto& c : cards) {
    if (&c == base) continue;
    Comparison cmp{base->system, c.system, c.holdout, {}};
    cmp.metrics.push_back(metric("wer", base->wer, c.wer, false));
    cmp.metrics.push_back(metric("cer", base->cer, c.cer, false));
    cmp.metrics.push_back(metric("sfr", base->sfr, c.sfr, false));
    cmp.metrics.push_back(metric("ehr", base->ehr.micro, c.ehr.micro, true));
    cmp.metrics.push_back(metric("ehr_macro", base->ehr.macro, c.ehr.macro, true));
    out.push_back(std::move(cmp));
  }
  return out;
}

std::string render_comparison(std::span<const Comparison> comparisons, OutputFormat format) {
  auto delta_cell = [](const MetricDelta& m) {
    return m.delta ? format_delta(*m.delta) : std::string("—");
  };
  auto ratio_cell = [](const MetricDelta& m, const char* suffix) {
    if (!m.ratio) return std::string(m.metric.rfind("ehr", 0) == 0 ? "—" : "");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%s", *m.ratio, suffix);
    return std::string(buf);
  };
  std::ostringstream out;
  if (format == OutputFormat::Table) {
    TextTable t;
    t.add({"Baseline", "System", "Holdout", "Metric", "Baseline value", "System value", "Δ",
           "Ratio"});
    for (const auto& c : comparisons) {
      for (const auto& m : c.metrics) {
        t.add({c.baseline, c.system, c.holdout, m.metric, format_rate(m.baseline),
               format_rate(m.value), delta_cell(m), ratio_cell(m, "×")});
      }
    }
    out << t.render();
    out << "Δ = system - baseline; positive WER/CER is a regression, positive EHR/SFR an improvement\n";
    return out.str();
  }
  if (format == OutputFormat::Records) {
    for (const auto& c : comparisons) {
      for (const auto& m : c.metrics) {
        json r = {{"baseline", c.baseline},
                  {"system", c.system},
                  {"holdout", c.holdout},
                  {"metric", m.metric},
                  {"baseline_value", rate_json(m.baseline)},
                  {"value", rate_json(m.value)},
                  {"delta", rate_json(m.delta)},
                  {"ratio", m.ratio ? json(std::round(*m.ratio * 10.0) / 10.0) : json(nullptr)}};
        out << r.dump() << '\n';
      }
    }
    return out.str();
  }
  out << "baseline,system,holdout,metric,baseline_value,value,delta,ratio\n";
  for (const auto& c : comparisons) {
    for (const auto& m : c.metrics) {
      out << csv_field(c.baseline) << ',' << csv_field(c.system) << ',' << csv_field(c.holdout)
          << ',' << m.metric << ',' << (m.baseline ? format_rate(m.baseline) : "NA") << ','
          << (m.value ? format_rate(m.value) : "NA") << ','
          << (m.delta ? format_delta(*m.delta) : "NA") << ',' << ratio_cell(m, "") << '\n';
    }
  }
  return out.str();
}

}  // namespace entityscore
