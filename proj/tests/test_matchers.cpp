#include <gtest/gtest.h>

#include <random>

#include "boundary_cases.hpp"
#include "entityscore/errors.hpp"
#include "entityscore/matchers.hpp"
#include "oracles.hpp"

using namespace entityscore;

class Boundary : public ::testing::TestWithParam<boundary::Case> {};

TEST_P(Boundary, Outcome) {
  const auto& c = GetParam();
  const auto r = boundary::run(c);
  EXPECT_EQ(r.hit, c.hit) << c.reference << " / " << c.hypothesis << " : " << r.detail;
  EXPECT_EQ(r.matcher_class, c.cls);
  if (r.hit) EXPECT_FALSE(r.detail.empty());
}

INSTANTIATE_TEST_SUITE_P(Cases, Boundary, ::testing::ValuesIn(boundary::cases()),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Matchers, BoundarySuiteCoversEveryClass) {
  std::set<MatcherClass> seen;
  for (const auto& c : boundary::cases()) seen.insert(c.cls);
  EXPECT_EQ(seen.size(), kAllMatcherClasses.size());
  EXPECT_GE(boundary::cases().size(), 19u);
}

TEST(Matchers, ReferenceValidation) {
  EXPECT_THROW(match_pincode({"50003", MatcherClass::Pincode, Language::Telugu}, "x"), ValidationError);
  EXPECT_THROW(match_digit_run({"abc", MatcherClass::DigitRun, Language::Telugu}, "x"), ValidationError);
  EXPECT_THROW(match_currency({"lots", MatcherClass::CurrencyAmount, Language::Telugu}, "5",
                              MultiplierTable::english(), CurrencyMode::Strict, kCurrencyTolerance),
               ValidationError);
  EXPECT_THROW(match_spelled_digit({"hello", MatcherClass::SpelledDigit, Language::Telugu}, "5",
                                   MultiplierTable::english(), 0.8),
               ValidationError);
  EXPECT_THROW(match_brand({"x", MatcherClass::Pincode, Language::Telugu}, "x", BrandAliasTable{}),
               std::invalid_argument);
}

TEST(Matchers, BrandWithoutAliasFallsBackToSurface) {
  const BrandAliasTable none;
  const auto r = match_brand({"Meesho", MatcherClass::Brand, Language::Telugu}, "bought on meesho", none);
  EXPECT_TRUE(r.hit);
  EXPECT_NE(r.detail.find("no alias entry"), std::string::npos);
}

TEST(Matchers, AliasTableParsing) {
  const auto t = BrandAliasTable::parse("# c\nPaytm\tపేటీఎం\tpay tm\n", "aliases.tsv");
  ASSERT_NE(t.aliases_for("PAYTM"), nullptr);
  EXPECT_EQ(t.aliases_for("pay tm"), t.aliases_for("paytm"));
  EXPECT_EQ(t.aliases_for("swiggy"), nullptr);
  // A shared alias merges rows; a row bridging two brands is a conflict.
  EXPECT_EQ(BrandAliasTable::parse("A\tx\nB\tx\n", "merge.tsv").size(), 1u);
  EXPECT_THROW(BrandAliasTable::parse("A\tx\nB\ty\nC\tx\ty\n", "dup.tsv"), DataError);
}

TEST(Matchers, EmptyHypothesisIsAllMiss) {
  const auto config = boundary::config(CurrencyMode::Strict);
  std::vector<EntityToken> tokens = {{"9876543210", MatcherClass::DigitRun, Language::Telugu},
                                     {"Flipkart", MatcherClass::Brand, Language::Telugu},
                                     {"Plot 42", MatcherClass::HouseOrPlot, Language::Telugu}};
  for (const auto& r : score_utterance(tokens, "", config)) EXPECT_FALSE(r.hit);
  EXPECT_TRUE(score_utterance({}, "anything", config).empty());
}

TEST(Matchers, AppendingTextKeepsSubstringHits) {
  std::mt19937 rng(17);
  const auto config = boundary::config(CurrencyMode::Strict);
  const char* tails[] = {" 1", "2", ",3", " foo", "-9", " 98765", "x", " paytm", " ౫"};
  for (const auto& c : boundary::cases()) {
    if (!c.hit) continue;
    if (c.cls != MatcherClass::DigitRun && c.cls != MatcherClass::Pincode &&
        c.cls != MatcherClass::Brand && c.cls != MatcherClass::HouseOrPlot) {
      continue;
    }
    const EntityToken token{c.reference, c.cls, Language::Telugu};
    std::string hyp = c.hypothesis;
    for (int i = 0; i < 40; ++i) {
      // Appending starts a new token so existing whole tokens stay whole.
      hyp += std::string(" ") + tails[rng() % 9];
      ASSERT_TRUE(score_utterance(std::span(&token, 1), hyp, config)[0].hit) << c.name << ": " << hyp;
    }
  }
}

TEST(Matchers, StrictHitsAreBidirectionalHits) {
  std::mt19937 rng(23);
  const char* amounts[] = {"5 lakh",  "500000",   "₹5,00,000", "five lakh", "ఐదు లక్షల", "ఇరవై లక్ష",
                           "2000000", "20 lakh",  "twenty lakh", "502500",  "₹50,100",   "fifty thousand",
                           "50000",   "యాభై వేల", "1.5 lakh",    "150000"};
  const auto strict = boundary::config(CurrencyMode::Strict);
  const auto bidi = boundary::config(CurrencyMode::Bidirectional);
  std::size_t strict_hits = 0;
  for (const char* ref : amounts) {
    for (const char* hyp : amounts) {
      const EntityToken t{ref, MatcherClass::CurrencyAmount, Language::Telugu};
      const bool s = score_utterance(std::span(&t, 1), hyp, strict)[0].hit;
      const bool b = score_utterance(std::span(&t, 1), hyp, bidi)[0].hit;
      if (s) {
        ++strict_hits;
        EXPECT_TRUE(b) << ref << " / " << hyp;
      }
    }
  }
  EXPECT_GT(strict_hits, 16u);
}

TEST(Matchers, JaccardAndLcsAgainstBruteForce) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<std::string> a(rng() % 11), b(rng() % 11);
    for (auto& s : a) s = std::string(1, char('a' + rng() % 5));
    for (auto& s : b) s = std::string(1, char('a' + rng() % 5));
    const double j = jaccard(a, b);
    ASSERT_DOUBLE_EQ(j, oracle::jaccard(a, b));
    ASSERT_DOUBLE_EQ(j, jaccard(b, a));
    ASSERT_GE(j, 0.0);
    ASSERT_LE(j, 1.0);

    std::string x(rng() % 11, '0'), y(rng() % 11, '0');
    for (auto& c : x) c = char('0' + rng() % 4);
    for (auto& c : y) c = char('0' + rng() % 4);
    const auto l = lcs_length(x, y);
    ASSERT_EQ(l, oracle::lcs(x, y));
    ASSERT_EQ(l, lcs_length(y, x));
    ASSERT_LE(l, std::min(x.size(), y.size()));
  }
}

TEST(Matchers, DigitClusters) {
  const auto c = digit_clusters("call 98765 43210, or 040-2345 then 7");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], (std::vector<std::string>{"98765", "43210"}));
  EXPECT_EQ(c[1], (std::vector<std::string>{"040", "2345"}));
  EXPECT_EQ(c[2], (std::vector<std::string>{"7"}));
}

TEST(Aggregation, TableThreePooling) {
  auto build = [](std::vector<std::pair<int, int>> per_class) {
    std::vector<ClassHit> hits;
    const char* names[] = {"c0", "c1", "c2", "c3"};
    for (std::size_t k = 0; k < per_class.size(); ++k) {
      for (int i = 0; i < per_class[k].first; ++i) hits.push_back({names[k], i < per_class[k].second});
    }
    return aggregate_ehr(hits, {});
  };
  const auto vanilla = build({{28, 0}, {17, 4}, {93, 0}, {12, 0}});
  EXPECT_NEAR(*vanilla.micro, 4.0 / 150.0, 1e-12);
  EXPECT_NEAR(*vanilla.micro, 0.027, 0.001);
  EXPECT_NEAR(*vanilla.macro, 0.059, 0.001);
  const auto adapted = build({{28, 22}, {17, 9}, {93, 34}, {12, 6}});
  EXPECT_NEAR(*adapted.micro, 0.473, 0.001);
  EXPECT_NEAR(*adapted.macro, 0.545, 0.001);
}

TEST(Aggregation, EmptyClassesAreNa) {
  std::vector<ClassHit> hits(10, {"digits", true});
  const std::vector<std::string> include = {"digits", "brands"};
  const auto r = aggregate_ehr(hits, include);
  EXPECT_FALSE(r.per_class.at("brands").rate());
  EXPECT_DOUBLE_EQ(*r.macro, 1.0);
  EXPECT_DOUBLE_EQ(*r.micro, 1.0);
  EXPECT_FALSE(aggregate_ehr(std::span<const ClassHit>{}, include).micro);
}

TEST(Aggregation, MicroBetweenClassExtremes) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ClassHit> hits;
    const int classes = 1 + rng() % 7;
    for (int k = 0; k < classes; ++k) {
      const int n = rng() % 30;
      for (int i = 0; i < n; ++i) hits.push_back({"c" + std::to_string(k), rng() % 3 == 0});
    }
    std::shuffle(hits.begin(), hits.end(), rng);
    const auto r = aggregate_ehr(hits, {});
    if (!r.micro) continue;
    double lo = 1.0, hi = 0.0;
    for (const auto& [cls, t] : r.per_class) {
      if (!t.rate()) continue;
      lo = std::min(lo, *t.rate());
      hi = std::max(hi, *t.rate());
    }
    ASSERT_GE(*r.micro, lo - 1e-12);
    ASSERT_LE(*r.micro, hi + 1e-12);
    ASSERT_GE(*r.macro, lo - 1e-12);
    ASSERT_LE(*r.macro, hi + 1e-12);
    std::reverse(hits.begin(), hits.end());
    ASSERT_EQ(aggregate_ehr(hits, {}).micro, r.micro);
  }
}
