#include "entityscore/scoring.hpp"

#include <omp.h>

#include <exception>

#include "entityscore/errors.hpp"

namespace entityscore {

UtteranceScore score_pair(const HoldoutRow& row, std::string_view hypothesis,
                          const ScoringOptions& options) {
  UtteranceScore out;
  out.words = word_errors(row.text, hypothesis, options.normalization);
  out.chars = char_errors(row.text, hypothesis, options.normalization);
  out.sfr = sfr(hypothesis, row.language);
  try {
    out.matches = score_utterance(row.entity_tokens, hypothesis, options.matcher);
  } catch (const ValidationError& e) {
    throw ValidationError("row '" + row.id + "' (line " + std::to_string(row.line) + "): " + e.what());
  }
  return out;
}

std::vector<UtteranceScore> score_pairs_serial(std::span<const ScoringPair> pairs,
                                               const ScoringOptions& options) {
  std::vector<UtteranceScore> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(score_pair(*p.row, p.prediction->hypothesis, options));
  return out;
}

namespace {

template <typename Fn>
void parallel_for_each_index(std::size_t count, int threads, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(team)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<UtteranceScore> score_pairs_parallel(std::span<const ScoringPair> pairs,
                                                 const ScoringOptions& options, int threads) {
  std::vector<UtteranceScore> out(pairs.size());
  parallel_for_each_index(pairs.size(), threads, [&](std::size_t i) {
    out[i] = score_pair(*pairs[i].row, pairs[i].prediction->hypothesis, options);
  });
  return out;
}

std::vector<SfrResult> sfr_batch_serial(std::span<const std::string> texts, Language lang) {
  std::vector<SfrResult> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(sfr(t, lang));
  return out;
}

std::vector<SfrResult> sfr_batch_parallel(std::span<const std::string> texts, Language lang,
                                          int threads) {
  std::vector<SfrResult> out(texts.size());
  parallel_for_each_index(texts.size(), threads, [&](std::size_t i) { out[i] = sfr(texts[i], lang); });
  return out;
}

}  // namespace entityscore
