#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entityscore/corpus.hpp"

namespace entityscore {

/// Rows of this corpus class always go to `target`, before any weighted draw.
struct ClassOverride {
  std::string corpus_class;
  SynthSystem target;
};

/// After the draw: rows of `language` that landed in `bucket` are served by
/// `replacement` (Hindi's share of the Praxy bucket is vanilla Chatterbox).
struct BucketSubstitution {
  Language language;
  SynthSystem bucket;
  SynthSystem replacement;
};

struct RouterPolicy {
  std::vector<std::pair<SynthSystem, double>> weights;
  std::vector<ClassOverride> overrides;
  std::vector<BucketSubstitution> substitutions;
  std::uint64_t seed = 0;

  /// praxy 0.60 / elevenlabs 0.20 / cartesia 0.20, codemix -> indicf5,
  /// Hindi praxy bucket -> chatterbox.
  static RouterPolicy standard(std::uint64_t seed = 0);

  /// Weights non-negative and summing to 1 within 1e-9. Throws ConfigError.
  void validate() const;
};

/// Seeded 64-bit hash of a row id; the only source of routing randomness.
std::uint64_t route_hash(std::uint64_t seed, std::string_view id);

SynthSystem route_utterance(const ManifestRow& row, const RouterPolicy& policy);
std::vector<ManifestRow> route_manifest(std::vector<ManifestRow> rows, const RouterPolicy& policy);

inline constexpr double kDefaultCerThreshold = 0.5;

struct CerFilterResult {
  std::vector<ManifestRow> accepted;
  std::vector<ManifestRow> rejected;
};

/// Rejects rows whose CER is strictly greater than `threshold`. Every row
/// needs cer_against_source; missing values raise DataError naming the ids.
CerFilterResult apply_cer_filter(std::vector<ManifestRow> rows,
                                 double threshold = kDefaultCerThreshold);

/// Per-language row counts by synthesis column (Chatterbox folds into praxy).
struct SynthCounts {
  std::map<std::string, std::map<std::string, std::size_t>> by_language;
};

struct SplitResult {
  std::vector<ManifestRow> train;
  std::vector<ManifestRow> heldout;  // exactly the cartesia rows
  SynthCounts counts;
  std::vector<std::string> warnings;
};

/// Input rows must all be accepted and routed.
SplitResult split_heldout(std::vector<ManifestRow> rows);

SynthCounts count_synth_systems(std::span<const ManifestRow> rows);
/// Tab-delimited, one line per language plus header:
/// lang praxy elevenlabs cartesia indicf5 total
std::string format_synth_counts(const SynthCounts& counts);

/// Up to `per_class_target` rows per corpus class, chosen by seeded hash and
/// returned in input order.
std::vector<ManifestRow> class_balance(const std::vector<ManifestRow>& rows,
                                       std::size_t per_class_target, std::uint64_t seed);

}  // namespace entityscore
