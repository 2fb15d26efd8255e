#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "entityscore/matchers.hpp"
#include "entityscore/script.hpp"

namespace entityscore {

/// One reference utterance from a holdout JSONL file.
struct HoldoutRow {
  std::string id;
  std::string text;
  std::string audio_path;
  std::vector<EntityToken> entity_tokens;
  std::string entity_class;  // row-level corpus class ("addresses", "brands", ...)
  Language language = Language::Telugu;
  std::size_t line = 0;
};

struct Prediction {
  std::string id;
  std::string hypothesis;
  std::string system;
  nlohmann::json extra = nlohmann::json::object();  // unknown fields, kept verbatim
  std::size_t line = 0;
};

enum class SynthSystem { Praxy, Chatterbox, IndicF5, ElevenLabs, Cartesia };
std::string_view synth_system_name(SynthSystem s);
SynthSystem parse_synth_system(std::string_view name);

enum class RowStatus { Pending, Synthesized, FilteredOut, Accepted };
std::string_view row_status_name(RowStatus s);
RowStatus parse_row_status(std::string_view name);
/// Forward-only: pending -> synthesized -> filtered_out | accepted.
bool can_transition(RowStatus from, RowStatus to);

struct ManifestRow {
  std::string id;
  std::string text;
  Language language = Language::Telugu;
  std::string corpus_class;
  std::optional<SynthSystem> synth_system;
  std::optional<double> cer_against_source;
  RowStatus status = RowStatus::Pending;
  std::vector<EntityToken> entity_tokens;
  nlohmann::json extra = nlohmann::json::object();
  std::size_t line = 0;

  /// Throws DataError on a backward transition.
  void set_status(RowStatus next);
};

/// Matcher class implied by a row-level corpus class, when there is one.
/// Address and codemix rows carry mixed entities and need explicit classes.
std::optional<MatcherClass> default_matcher_class(std::string_view corpus_class);

/// `default_language` applies to rows without a "language" field.
std::vector<HoldoutRow> parse_holdout(std::istream& in, std::string_view source,
                                      std::optional<Language> default_language = {});
std::vector<HoldoutRow> load_holdout(const std::filesystem::path& path,
                                     std::optional<Language> default_language = {});
nlohmann::json to_json(const HoldoutRow& row);

/// An empty hypothesis is valid. `default_system` names rows without a
/// "system" field.
std::vector<Prediction> parse_predictions(std::istream& in, std::string_view source,
                                          std::string_view default_system);
std::vector<Prediction> load_predictions(const std::filesystem::path& path,
                                         std::string_view default_system = {});

std::vector<ManifestRow> parse_manifest(std::istream& in, std::string_view source);
std::vector<ManifestRow> load_manifest(const std::filesystem::path& path);
nlohmann::json to_json(const ManifestRow& row);
void write_manifest(std::ostream& out, std::span<const ManifestRow> rows);
void write_manifest(const std::filesystem::path& path, std::span<const ManifestRow> rows);

struct DictionaryEntry {
  std::string surface;
  std::vector<std::string> aliases;
};

/// `entities/{class}/{lang}.jsonl`: {"surface": ..., "aliases": [...]} per line.
std::vector<DictionaryEntry> load_entity_dictionary(const std::filesystem::path& path);
BrandAliasTable brand_aliases_from(std::span<const DictionaryEntry> entries);

struct ValidationConfig {
  double purity_threshold = kDefaultPurityThreshold;
  std::size_t min_tokens = 3;
  std::size_t max_tokens = 25;
};

struct Violation {
  enum class Kind { ScriptPurity, MissingEntity, Length };
  Kind kind;
  std::string message;
};
std::string_view violation_kind_name(Violation::Kind k);

/// Native-script realization (entity spans excluded), entity presence and
/// token-count bounds. Violations come back in that fixed order.
std::vector<Violation> validate_corpus_row(std::string_view text,
                                           std::span<const EntityToken> entities,
                                           Language lang, const ValidationConfig& config = {});
std::vector<Violation> validate_corpus_row(const ManifestRow& row,
                                           const ValidationConfig& config = {});

/// Key used for de-duplication: NFKC + casefold + collapsed white space.
std::string dedup_key(std::string_view text);

/// Keeps the first row of each dedup_key, preserving order.
template <typename Row>
std::vector<Row> dedup_rows(std::vector<Row> rows);

}  // namespace entityscore
