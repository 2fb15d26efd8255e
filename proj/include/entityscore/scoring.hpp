#pragma once

#include <span>
#include <string>
#include <vector>

#include "entityscore/corpus.hpp"
#include "entityscore/distance.hpp"
#include "entityscore/matchers.hpp"
#include "entityscore/script.hpp"

namespace entityscore {

struct ScoringOptions {
  MatcherConfig matcher;
  Normalization normalization = Normalization::Default;
};

/// Everything measured for one (reference, hypothesis) pair.
struct UtteranceScore {
  ErrorRate words;
  ErrorRate chars;
  SfrResult sfr;
  std::vector<MatchResult> matches;
};

struct ScoringPair {
  const HoldoutRow* row = nullptr;
  const Prediction* prediction = nullptr;
};

UtteranceScore score_pair(const HoldoutRow& row, std::string_view hypothesis,
                          const ScoringOptions& options);

// Serial reference and OpenMP kernel; results are identical and index-aligned
// with `pairs`. On failure the exception from the lowest failing index is
// rethrown.
std::vector<UtteranceScore> score_pairs_serial(std::span<const ScoringPair> pairs,
                                               const ScoringOptions& options);
std::vector<UtteranceScore> score_pairs_parallel(std::span<const ScoringPair> pairs,
                                                 const ScoringOptions& options,
                                                 int threads = 0);

std::vector<SfrResult> sfr_batch_serial(std::span<const std::string> texts, Language lang);
std::vector<SfrResult> sfr_batch_parallel(std::span<const std::string> texts, Language lang,
                                          int threads = 0);

}  // namespace entityscore
