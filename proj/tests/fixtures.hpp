#pragma once

// Seeded synthetic holdout + two prediction systems, shared by tests, the
// acceptance binary and the benchmark.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "entityscore/corpus.hpp"

namespace fixture {

struct Fixture {
  std::vector<entityscore::HoldoutRow> holdout;
  std::vector<entityscore::Prediction> predictions;
};

inline std::string digits(std::mt19937_64& rng, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + rng() % 10));
  return s;
}

inline Fixture make_telugu(std::size_t rows, std::uint64_t seed) {
  using namespace entityscore;
  std::mt19937_64 rng(seed);
  static const char* kPlaces[] = {"జూబ్లీ హిల్స్", "బంజారా హిల్స్", "కూకట్‌పల్లి", "సికింద్రాబాద్"};
  static const char* kBrands[] = {"Flipkart", "Paytm", "Swiggy", "Zomato"};
  static const char* kBrandsTe[] = {"ఫ్లిప్‌కార్ట్", "పేటీఎం", "స్విగ్గీ", "జొమాటో"};
  static const char* kAmounts[] = {"₹5,00,000", "₹2,500", "₹12,00,000", "₹75,000"};
  static const char* kAmountsTe[] = {"ఐదు లక్షల రూపాయలు", "రెండు వేల ఐదు వందల రూపాయలు",
                                     "పన్నెండు లక్షల రూపాయలు", "డెబ్బై ఐదు వేల రూపాయలు"};
  static const char* kSpoken[] = {"nine eight seven six", "four four two one", "one two three four five"};

  Fixture f;
  for (std::size_t i = 0; i < rows; ++i) {
    HoldoutRow row;
    row.id = "te-" + std::to_string(1000 + i);
    row.language = Language::Telugu;
    row.line = i + 1;
    const int pick = static_cast<int>(rng() % 4);
    std::string good, bad;
    switch (i % 6) {
      case 0: {
        const std::string n = digits(rng, 10);
        row.entity_class = "digits";
        row.text = "నా నంబర్ " + n.substr(0, 5) + " " + n.substr(5) + " కి కాల్ చేయండి";
        row.entity_tokens = {{n, MatcherClass::DigitRun, Language::Telugu}};
        good = row.text;
        bad = "నా నంబర్ " + n.substr(0, 5) + " కి కాల్ చేయండి";
        break;
      }
      case 1:
        row.entity_class = "currency";
        row.text = std::string("ధర ") + kAmounts[pick] + " మాత్రమే";
        row.entity_tokens = {{kAmounts[pick], MatcherClass::CurrencyAmount, Language::Telugu}};
        good = std::string("ధర ") + kAmountsTe[pick] + " మాత్రమే";
        bad = "ధర చాలా ఎక్కువ";
        break;
      case 2:
        row.entity_class = "brands";
        row.text = std::string(kBrands[pick]) + " లో ఆర్డర్ చేశాను";
        row.entity_tokens = {{kBrands[pick], MatcherClass::Brand, Language::Telugu}};
        good = std::string(kBrandsTe[pick]) + " లో ఆర్డర్ చేశాను";
        bad = "ఫ్లిప్ లో ఆర్డర్ చేశాను";
        break;
      case 3:
        row.entity_class = "proper_nouns";
        row.text = std::string(kPlaces[pick]) + " కి వెళ్ళండి";
        row.entity_tokens = {{kPlaces[pick], MatcherClass::ProperNoun, Language::Telugu}};
        good = row.text;
        bad = "హిల్స్ దగ్గర వెళ్ళండి";
        break;
      case 4: {
        const std::string plot = std::to_string(1 + rng() % 400);
        const std::string pin = "5000" + digits(rng, 2);
        row.entity_class = "addresses";
        row.text = "ప్లాట్ నం " + plot + " " + kPlaces[pick] + " హైదరాబాద్ " + pin;
        row.entity_tokens = {{"ప్లాట్ నం " + plot, MatcherClass::HouseOrPlot, Language::Telugu},
                             {pin, MatcherClass::Pincode, Language::Telugu},
                             {kPlaces[pick], MatcherClass::ProperNoun, Language::Telugu}};
        good = row.text;
        bad = "ప్లాట్ " + plot + " హైదరాబాద్ " + pin.substr(0, 3);
        break;
      }
      default: {
        const char* spoken = kSpoken[pick % 3];
        row.entity_class = "codemix";
        row.text = std::string("OTP ") + spoken + " అని చెప్పండి";
        row.entity_tokens = {{spoken, MatcherClass::SpelledDigit, Language::Telugu}};
        good = row.text;
        bad = "OTP nine అని చెప్పండి";
        break;
      }
    }
    f.predictions.push_back({row.id, rng() % 5 == 0 ? bad : good, "adapted", {}, i + 1});
    f.predictions.push_back({row.id, rng() % 5 == 0 ? good : bad, "vanilla", {}, rows + i + 1});
    f.holdout.push_back(std::move(row));
  }
  return f;
}

inline void write(const Fixture& f, const std::filesystem::path& holdout,
                  const std::filesystem::path& predictions) {
  std::ofstream h(holdout, std::ios::binary);
  for (const auto& row : f.holdout) h << entityscore::to_json(row).dump() << '\n';
  std::ofstream p(predictions, std::ios::binary);
  for (const auto& pr : f.predictions) {
    p << nlohmann::json{{"id", pr.id}, {"system", pr.system}, {"hypothesis", pr.hypothesis}}.dump()
      << '\n';
  }
}

}  // namespace fixture
