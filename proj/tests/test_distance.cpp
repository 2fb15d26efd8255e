#include <gtest/gtest.h>

#include <random>

#include "entityscore/distance.hpp"
#include "entityscore/errors.hpp"
#include "oracles.hpp"

using namespace entityscore;

TEST(Distance, KnownPairs) {
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("flaw", "lawn"), 2u);
  EXPECT_EQ(levenshtein("same", "same"), 0u);
}

TEST(Distance, MatchesRecursiveOracleOnSample) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string a(rng() % 7, 'a'), b(rng() % 7, 'a');
    for (auto& c : a) c = char('a' + rng() % 3);
    for (auto& c : b) c = char('a' + rng() % 3);
    ASSERT_EQ(levenshtein(a, b), oracle::levenshtein(a, b)) << a << " / " << b;
  }
}

TEST(Distance, MetricProperties) {
  std::mt19937 rng(5);
  auto word = [&] {
    std::string s(rng() % 9, 'a');
    for (auto& c : s) c = char('a' + rng() % 4);
    return s;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = word(), b = word(), c = word();
    const auto ab = levenshtein(a, b);
    EXPECT_EQ(ab, levenshtein(b, a));
    EXPECT_LE(levenshtein(a, c), ab + levenshtein(b, c));
    EXPECT_LE(ab, std::max(a.size(), b.size()));
    EXPECT_GE(ab, a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
  }
}

TEST(Distance, WerDefaultNormalization) {
  const auto r = wer("Plot no. 42, Jubilee Hills", "plot no 42 jubilee hills");
  EXPECT_EQ(r.distance, 0u);
  EXPECT_EQ(r.reference_length, 5u);
  const auto s = wer("Plot no. 42, Jubilee Hills", "plot no 42 jubilee hills", Normalization::Strict);
  EXPECT_EQ(s.distance, 5u);
  EXPECT_THROW(wer(" ,. ", "x"), DataError);
  EXPECT_FALSE(word_errors("", "x").rate());
}

TEST(Distance, EmptyHypothesisIsAllDeletions) {
  const auto r = wer("one two three", "");
  EXPECT_DOUBLE_EQ(*r.rate(), 1.0);
  const auto c = cer("ab cd", "");
  EXPECT_EQ(c.reference_length, 5u);  // the space counts
  EXPECT_DOUBLE_EQ(*c.rate(), 1.0);
  // Insertions can push WER above one.
  EXPECT_GT(*wer("a", "b c d").rate(), 1.0);
}

TEST(Distance, CerOverCodePoints) {
  // One Telugu code point substituted: distance 1, not 3 bytes.
  const auto r = cer("కల", "కళ");
  EXPECT_EQ(r.distance, 1u);
  EXPECT_EQ(r.reference_length, 2u);
  EXPECT_EQ(cer_characters("A  B", Normalization::Default), U"a b");
  EXPECT_EQ(cer_characters("A  B", Normalization::Strict), U"A B");
}
