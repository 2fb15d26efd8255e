#include <gtest/gtest.h>

#include <random>

#include "entityscore/textnorm.hpp"

using namespace entityscore;

TEST(Textnorm, TokenizeStripsEdgePunctuationOnly) {
  // Hand-traced: "no." and "42," lose their trailing marks, nothing inside splits.
  EXPECT_EQ(tokenize("plot no. 42, Jubilee Hills"),
            (std::vector<std::string>{"plot", "no", "42", "Jubilee", "Hills"}));
  EXPECT_EQ(tokenize("₹50,000 (approx)"), (std::vector<std::string>{"₹50,000", "approx"}));
  EXPECT_EQ(tokenize("8-2-293/82"), (std::vector<std::string>{"8-2-293/82"}));
  EXPECT_TRUE(tokenize("  ,,  ").empty());
  EXPECT_TRUE(tokenize("").empty());
}

TEST(Textnorm, NfkcFoldsCompatibilityForms) {
  EXPECT_EQ(nfkc_normalize("ﬁ"), "fi");
  EXPECT_EQ(nfkc_normalize("１２３"), "123");
  // Composition exclusion: U+095C decomposes under NFKC.
  EXPECT_EQ(nfkc_normalize("ड़"), "ड़");
}

TEST(Textnorm, CasefoldIsIdempotent) {
  EXPECT_EQ(casefold_normalize("Straße HELLO"), "strasse hello");
  std::mt19937 rng(7);
  const std::u32string alphabet = U"AaßẞİıΣσςﬃ①Ⅻ క్షహిந்தி";
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string s;
    for (int i = 0; i < 12; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
    const std::string once = casefold_normalize(to_utf8(s));
    EXPECT_EQ(casefold_normalize(once), once);
  }
}

TEST(Textnorm, CollapseWhitespace) {
  EXPECT_EQ(collapse_whitespace("  a \t\n b  c  "), "a b c");
  EXPECT_EQ(collapse_whitespace(""), "");
  const auto n = NormalizedText::from("  ｆｏｏ   bar ");
  EXPECT_EQ(n.raw, "  ｆｏｏ   bar ");
  EXPECT_EQ(n.normalized, "foo bar");
}

TEST(Textnorm, OffsetsIndexCodePointsOfNfkcText) {
  const std::string s = "ధర ₹5,00,000 మాత్రమే.";
  const auto toks = tokenize_with_offsets(s);
  ASSERT_EQ(toks.size(), 3u);
  const std::u32string u = to_u32(nfkc_normalize(s));
  for (const auto& t : toks) EXPECT_EQ(to_utf8(u.substr(t.begin, t.end - t.begin)), t.text);
  std::vector<std::string> plain;
  for (const auto& t : toks) plain.push_back(t.text);
  EXPECT_EQ(plain, tokenize(s));
}

TEST(Textnorm, CharacterClasses) {
  EXPECT_EQ(digit_value(U'7'), 7);
  EXPECT_EQ(digit_value(U'౯'), 9);   // Telugu nine
  EXPECT_EQ(digit_value(U'०'), 0);   // Devanagari zero
  EXPECT_EQ(digit_value(U'x'), -1);
  EXPECT_TRUE(is_letter(U'క'));
  EXPECT_FALSE(is_letter(U'ి'));  // vowel sign is a mark
  EXPECT_TRUE(is_punctuation(U'।'));
  EXPECT_TRUE(is_white_space(U'　'));
  EXPECT_EQ(to_u32("\xff"), U"�");
}
