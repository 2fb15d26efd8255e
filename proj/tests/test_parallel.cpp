#include <gtest/gtest.h>

#include "boundary_cases.hpp"
#include "entityscore/errors.hpp"
#include "entityscore/scoring.hpp"
#include "fixtures.hpp"

using namespace entityscore;

namespace {

std::vector<ScoringPair> pairs_of(const fixture::Fixture& f) {
  std::vector<ScoringPair> pairs;
  for (std::size_t i = 0; i < f.holdout.size(); ++i) {
    pairs.push_back({&f.holdout[i], &f.predictions[2 * i + (i % 2)]});
  }
  return pairs;
}

}  // namespace

TEST(Parallel, KernelMatchesSerialReference) {
  const auto f = fixture::make_telugu(600, 9);
  const auto pairs = pairs_of(f);
  ScoringOptions opts;
  opts.matcher = boundary::config(CurrencyMode::Bidirectional);
  const auto serial = score_pairs_serial(pairs, opts);
  for (int threads : {0, 1, 2, 4, 7}) {
    const auto par = score_pairs_parallel(pairs, opts, threads);
    ASSERT_EQ(par.size(), serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      ASSERT_EQ(par[i].words.distance, serial[i].words.distance);
      ASSERT_EQ(par[i].words.reference_length, serial[i].words.reference_length);
      ASSERT_EQ(par[i].chars.distance, serial[i].chars.distance);
      ASSERT_EQ(par[i].sfr.letter_count, serial[i].sfr.letter_count);
      ASSERT_EQ(par[i].sfr.in_block_count, serial[i].sfr.in_block_count);
      ASSERT_EQ(par[i].matches.size(), serial[i].matches.size());
      for (std::size_t k = 0; k < par[i].matches.size(); ++k) {
        ASSERT_EQ(par[i].matches[k].hit, serial[i].matches[k].hit);
        ASSERT_EQ(par[i].matches[k].detail, serial[i].matches[k].detail);
      }
    }
  }
}

TEST(Parallel, SfrBatch) {
  const auto f = fixture::make_telugu(300, 10);
  std::vector<std::string> texts;
  for (const auto& p : f.predictions) texts.push_back(p.hypothesis);
  const auto a = sfr_batch_serial(texts, Language::Telugu);
  const auto b = sfr_batch_parallel(texts, Language::Telugu, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].letter_count, b[i].letter_count);
    ASSERT_EQ(a[i].in_block_count, b[i].in_block_count);
  }
}

TEST(Parallel, LowestFailingIndexIsReported) {
  auto f = fixture::make_telugu(200, 11);
  f.holdout[150].entity_tokens = {{"12", MatcherClass::Pincode, Language::Telugu}};
  f.holdout[40].entity_tokens = {{"34", MatcherClass::Pincode, Language::Telugu}};
  const auto pairs = pairs_of(f);
  ScoringOptions opts;
  opts.matcher = boundary::config(CurrencyMode::Strict);
  for (int threads : {1, 4}) {
    try {
      score_pairs_parallel(pairs, opts, threads);
      FAIL();
    } catch (const ValidationError& e) {
      EXPECT_NE(std::string(e.what()).find(f.holdout[40].id), std::string::npos) << e.what();
    }
  }
}
