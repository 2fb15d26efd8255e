#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "entityscore/corpus.hpp"
#include "entityscore/errors.hpp"

using namespace entityscore;

namespace {

std::vector<HoldoutRow> holdout(const std::string& s) {
  std::istringstream in(s);
  return parse_holdout(in, "h.jsonl", Language::Telugu);
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Corpus, LoadsHoldoutRows) {
  const auto rows = holdout(
      R"({"id":"a","text":"నంబర్ 98765","entity_tokens":["98765"],"entity_class":"digits"})" "\n"
      "\n"
      R"({"id":"b","text":"x","entity_tokens":[{"surface":"500033","matcher_class":"pincode"}],"entity_class":"addresses","audio_path":"b.wav"})" "\n"
      R"({"id":"c","text":"y","language":"hi"})" "\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].entity_tokens[0].matcher_class, MatcherClass::DigitRun);
  EXPECT_EQ(rows[1].entity_tokens[0].matcher_class, MatcherClass::Pincode);
  EXPECT_EQ(rows[1].line, 3u);
  EXPECT_EQ(rows[2].language, Language::Hindi);
  EXPECT_TRUE(holdout("").empty());
}

TEST(Corpus, HoldoutErrorsNameLines) {
  const std::string dup = R"({"id":"a","text":"x"})" "\n"
                          R"({"id":"b","text":"x"})" "\n"
                          R"({"id":"c","text":"x"})" "\n"
                          R"({"id":"d","text":"x"})" "\n"
                          R"({"id":"b","text":"y"})" "\n";
  const auto msg = error_of([&] { holdout(dup); });
  EXPECT_NE(msg.find("lines 2 and 5"), std::string::npos) << msg;
  EXPECT_NE(error_of([] { holdout("{\"id\":\"a\"}\n"); }).find("h.jsonl:1"), std::string::npos);
  EXPECT_NE(error_of([] { holdout("not json\n"); }).find("h.jsonl:1"), std::string::npos);
  // Address rows need explicit classes.
  EXPECT_FALSE(error_of([] {
                 holdout(R"({"id":"a","text":"x","entity_tokens":["42"],"entity_class":"addresses"})");
               }).empty());
}

TEST(Corpus, Predictions) {
  std::istringstream in(R"({"id":"a","hypothesis":"x","system":"s1","confidence":0.9})" "\n"
                        R"({"id":"b","hypothesis":""})" "\n"
                        R"({"id":"c","hypothesis":"z","system":"s1"})" "\n");
  const auto p = parse_predictions(in, "p.jsonl", "fallback");
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[1].system, "fallback");
  EXPECT_EQ(p[1].hypothesis, "");
  EXPECT_EQ(p[0].extra.at("confidence"), 0.9);
  std::istringstream missing(R"({"id":"a"})" "\n");
  EXPECT_THROW(parse_predictions(missing, "p.jsonl", "s"), DataError);
  std::istringstream dup(R"({"id":"a","hypothesis":"x"})" "\n" R"({"id":"a","hypothesis":"y"})" "\n");
  EXPECT_THROW(parse_predictions(dup, "p.jsonl", "s"), DataError);
}

TEST(Corpus, ManifestRoundTrip) {
  std::mt19937 rng(4);
  const char* classes[] = {"digits", "brands", "codemix", "currency"};
  const char* statuses[] = {"pending", "synthesized", "accepted", "filtered_out"};
  std::ostringstream src;
  for (int i = 0; i < 50; ++i) {
    nlohmann::json r = {{"id", "r" + std::to_string(i)},
                        {"text", "వచనం " + std::to_string(rng() % 1000)},
                        {"language", i % 3 ? "te" : "ta"},
                        {"corpus_class", classes[rng() % 4]},
                        {"status", statuses[rng() % 4]},
                        {"speaker", "spk" + std::to_string(i % 5)}};
    if (rng() % 2) r["synth_system"] = "cartesia";
    if (rng() % 2) r["cer_against_source"] = double(rng() % 100) / 100.0;
    src << r.dump() << "\n";
  }
  std::istringstream in1(src.str());
  const auto rows = parse_manifest(in1, "m");
  std::ostringstream out1;
  write_manifest(out1, rows);
  std::istringstream in2(out1.str());
  const auto again = parse_manifest(in2, "m");
  std::ostringstream out2;
  write_manifest(out2, again);
  EXPECT_EQ(out1.str(), out2.str());
  EXPECT_EQ(again[0].extra.at("speaker"), "spk0");
}

TEST(Corpus, StatusMovesForwardOnly) {
  ManifestRow row;
  row.set_status(RowStatus::Synthesized);
  row.set_status(RowStatus::Accepted);
  EXPECT_THROW(row.set_status(RowStatus::Pending), DataError);
  EXPECT_THROW(row.set_status(RowStatus::FilteredOut), DataError);
  EXPECT_TRUE(can_transition(RowStatus::Pending, RowStatus::FilteredOut));
  EXPECT_FALSE(can_transition(RowStatus::Synthesized, RowStatus::Pending));
}

TEST(Corpus, ValidateCorpusRow) {
  const std::vector<EntityToken> ents = {{"Flipkart", MatcherClass::Brand, Language::Telugu}};
  // 12 tokens, native script apart from the tagged brand.
  const std::string clean = "నేను నిన్న Flipkart లో ఒక కొత్త ఫోన్ కొన్నాను అది చాలా బాగుంది నిజంగా";
  EXPECT_TRUE(validate_corpus_row(clean, ents, Language::Telugu).empty());

  std::string long_row;
  for (int i = 0; i < 30; ++i) long_row += "పదం ";
  const auto v = validate_corpus_row(long_row, {}, Language::Telugu);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::Length);

  const std::vector<EntityToken> absent = {{"Paytm", MatcherClass::Brand, Language::Telugu}};
  const auto m = validate_corpus_row("నేను ఇంటికి వెళ్ళాను", absent, Language::Telugu);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].kind, Violation::Kind::MissingEntity);

  const auto p = validate_corpus_row("I went home today", {}, Language::Telugu);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].kind, Violation::Kind::ScriptPurity);

  // Order of entities does not change the verdicts.
  const std::vector<EntityToken> two = {{"Paytm", MatcherClass::Brand, Language::Telugu},
                                        {"Flipkart", MatcherClass::Brand, Language::Telugu}};
  std::vector<EntityToken> flipped(two.rbegin(), two.rend());
  auto kinds = [](const std::vector<Violation>& vs) {
    std::multiset<int> k;
    for (const auto& x : vs) k.insert(int(x.kind));
    return k;
  };
  EXPECT_EQ(kinds(validate_corpus_row(clean, two, Language::Telugu)),
            kinds(validate_corpus_row(clean, flipped, Language::Telugu)));
}

TEST(Corpus, Dedup) {
  std::vector<HoldoutRow> rows(4);
  rows[0].id = "a"; rows[0].text = "hello  world";
  rows[1].id = "b"; rows[1].text = "Hello world ";
  rows[2].id = "c"; rows[2].text = "other";
  rows[3].id = "d"; rows[3].text = "ｈｅｌｌｏ world";
  const auto out = dedup_rows(rows);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].id, "a");
  EXPECT_EQ(out[1].id, "c");
  EXPECT_EQ(dedup_rows(out).size(), 2u);
  EXPECT_TRUE(dedup_rows(std::vector<HoldoutRow>{}).empty());
}
