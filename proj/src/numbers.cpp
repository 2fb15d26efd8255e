#include "entityscore/numbers.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "entityscore/errors.hpp"
#include "entityscore/textnorm.hpp"

namespace entityscore {
namespace {

bool is_power_of_ten(std::int64_t v) {
  if (v < 10) return false;
  while (v % 10 == 0) v /= 10;
  return v == 1;
}

}  // namespace

MultiplierTable::MultiplierTable(std::string name, std::vector<LexiconEntry> entries)
    : name_(std::move(name)) {
  entries_.reserve(entries.size());
  for (auto& e : entries) {
    e.word = casefold_normalize(e.word);
    if (e.word.empty()) throw DataError("lexicon '" + name_ + "': empty word");
    switch (e.kind) {
      case LexiconKind::Unit:
        if (e.value < 0 || e.value > kHundred) {
          throw DataError("lexicon '" + name_ + "': unit '" + e.word +
                          "' must have a value in 0..100");
        }
        break;
      case LexiconKind::Multiplier:
        if (!is_power_of_ten(e.value) || e.value < kThousand) {
          throw DataError("lexicon '" + name_ + "': multiplier '" + e.word +
                          "' must be a power of ten >= 1000");
        }
        break;
      case LexiconKind::CurrencyMarker:
        e.value = 0;
        break;
    }
    if (by_word_.count(e.word) != 0) {
      throw DataError("lexicon '" + name_ + "': duplicate word '" + e.word + "'");
    }
    by_word_.emplace(e.word, entries_.size());
    entries_.push_back(std::move(e));
  }

  auto prefer = [](std::unordered_map<std::int64_t, std::string>& spelling,
                   std::unordered_map<std::int64_t, LexiconScript>& seen_script,
                   const LexiconEntry& e) {
    auto it = seen_script.find(e.value);
    if (it == seen_script.end() ||
        (it->second == LexiconScript::Latin && e.script == LexiconScript::Native)) {
      spelling[e.value] = e.word;
      seen_script[e.value] = e.script;
    }
  };
  std::unordered_map<std::int64_t, LexiconScript> mult_script;
  for (const auto& e : entries_) {
    if (e.kind == LexiconKind::Unit) prefer(unit_spelling_, unit_script_, e);
    if (e.kind == LexiconKind::Multiplier) prefer(multiplier_spelling_, mult_script, e);
    if (e.kind == LexiconKind::CurrencyMarker) markers_.push_back(e.word);
  }
  std::stable_sort(markers_.begin(), markers_.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
}

const MultiplierTable& MultiplierTable::english() {
  static const MultiplierTable table = [] {
    static constexpr std::array<std::string_view, 20> kSmall = {
        "zero",    "one",     "two",       "three",    "four",     "five",    "six",
        "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
        "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};
    static constexpr std::array<std::string_view, 10> kTens = {
        "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};
    std::vector<LexiconEntry> entries;
    auto unit = [&](std::string word, std::int64_t v) {
      entries.push_back({std::move(word), v, LexiconKind::Unit, LexiconScript::Latin});
    };
    for (std::size_t i = 0; i < kSmall.size(); ++i) unit(std::string(kSmall[i]), i);
    for (std::size_t t = 2; t < kTens.size(); ++t) {
      unit(std::string(kTens[t]), t * 10);
      for (std::size_t o = 1; o < 10; ++o) {
        unit(std::string(kTens[t]) + "-" + std::string(kSmall[o]), t * 10 + o);
      }
    }
    unit("hundred", kHundred);
    auto mult = [&](std::string word, std::int64_t v) {
      entries.push_back({std::move(word), v, LexiconKind::Multiplier, LexiconScript::Latin});
    };
    mult("thousand", kThousand);
    mult("lakh", kLakh);
    mult("lakhs", kLakh);
    mult("lac", kLakh);
    mult("lacs", kLakh);
    mult("crore", kCrore);
    mult("crores", kCrore);
    mult("hazaar", kThousand);
    mult("hazar", kThousand);
    mult("million", 1'000'000);
    mult("billion", 1'000'000'000);
    for (std::string_view m : {"₹", "rs", "rs.", "inr", "rupee", "rupees"}) {
      entries.push_back({std::string(m), 0, LexiconKind::CurrencyMarker, LexiconScript::Latin});
    }
    return MultiplierTable("en", std::move(entries));
  }();
  return table;
}

MultiplierTable MultiplierTable::parse(std::string_view contents, std::string name) {
  std::vector<LexiconEntry> entries;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string word, value, kind, script;
    if (!(fields >> word)) continue;
    auto fail = [&](const std::string& what) {
      return DataError(name + ":" + std::to_string(line_no) + ": " + what);
    };
    if (!(fields >> value >> kind >> script)) {
      throw fail("expected fields: word value kind script");
    }
    LexiconEntry e;
    e.word = word;
    if (kind == "unit") {
      e.kind = LexiconKind::Unit;
    } else if (kind == "multiplier") {
      e.kind = LexiconKind::Multiplier;
    } else if (kind == "currency_marker") {
      e.kind = LexiconKind::CurrencyMarker;
    } else {
      throw fail("unknown kind '" + kind + "'");
    }
    if (script == "latin") {
      e.script = LexiconScript::Latin;
    } else if (script == "native") {
      e.script = LexiconScript::Native;
    } else {
      throw fail("unknown script '" + script + "'");
    }
    if (e.kind != LexiconKind::CurrencyMarker || value != "-") {
      try {
        std::size_t used = 0;
        e.value = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw fail("value '" + value + "' is not an integer");
      }
    }
    std::string extra;
    if (fields >> extra) throw fail("unexpected trailing field '" + extra + "'");
    entries.push_back(std::move(e));
  }
  return MultiplierTable(std::move(name), std::move(entries));
}

MultiplierTable MultiplierTable::load(const std::filesystem::path& path, std::string name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), std::move(name));
}

MultiplierTable MultiplierTable::merged_with(const MultiplierTable& fallback) const {
  std::vector<LexiconEntry> merged = entries_;
  for (const auto& e : fallback.entries_) {
    if (by_word_.count(e.word) == 0) merged.push_back(e);
  }
  return MultiplierTable(name_ + "+" + fallback.name_, std::move(merged));
}

std::optional<std::int64_t> MultiplierTable::unit_value(std::string_view word) const {
  auto it = by_word_.find(std::string(word));
  if (it == by_word_.end() || entries_[it->second].kind != LexiconKind::Unit) return std::nullopt;
  return entries_[it->second].value;
}

std::optional<std::int64_t> MultiplierTable::multiplier_value(std::string_view word) const {
  auto it = by_word_.find(std::string(word));
  if (it == by_word_.end() || entries_[it->second].kind != LexiconKind::Multiplier) {
    return std::nullopt;
  }
  return entries_[it->second].value;
}

bool MultiplierTable::is_currency_marker(std::string_view word) const {
  auto it = by_word_.find(std::string(word));
  return it != by_word_.end() && entries_[it->second].kind == LexiconKind::CurrencyMarker;
}

std::optional<std::string> MultiplierTable::unit_word(std::int64_t value) const {
  auto it = unit_spelling_.find(value);
  if (it == unit_spelling_.end()) return std::nullopt;
  return it->second;
}

std::optional<LexiconScript> MultiplierTable::unit_script(std::int64_t value) const {
  auto it = unit_script_.find(value);
  if (it == unit_script_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> MultiplierTable::multiplier_word(std::int64_t value) const {
  auto it = multiplier_spelling_.find(value);
  if (it == multiplier_spelling_.end()) return std::nullopt;
  return it->second;
}

std::string_view source_form_name(SourceForm form) {
  switch (form) {
    case SourceForm::LatinNumeral: return "latin_numeral";
    case SourceForm::WordSequence: return "word_sequence";
    case SourceForm::Mixed: return "mixed";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parsing

std::optional<ParsedAmount> parse_latin_numeral(std::string_view s) {
  const std::u32string u = to_u32(s);
  if (u.empty()) return std::nullopt;
  std::vector<std::string> groups(1);
  std::string fraction;
  bool in_fraction = false;
  for (char32_t c : u) {
    const int d = digit_value(c);
    if (d >= 0) {
      (in_fraction ? fraction : groups.back()).push_back(static_cast<char>('0' + d));
    } else if (c == U',' && !in_fraction) {
      groups.emplace_back();
    } else if (c == U'.' && !in_fraction) {
      in_fraction = true;
    } else {
      return std::nullopt;
    }
  }
  if (std::any_of(groups.begin(), groups.end(), [](const auto& g) { return g.empty(); })) {
    return std::nullopt;
  }
  if (in_fraction && fraction.empty()) return std::nullopt;
  if (groups.size() > 1) {
    if (groups.back().size() != 3 || groups.front().size() > 3) return std::nullopt;
    const std::size_t mid_len = groups.size() > 2 ? groups[1].size() : 3;
    if (mid_len != 2 && mid_len != 3) return std::nullopt;
    for (std::size_t i = 1; i + 1 < groups.size(); ++i) {
      if (groups[i].size() != mid_len) return std::nullopt;
    }
    if (mid_len == 2 && groups.front().size() > 2) return std::nullopt;
  }
  std::string digits;
  for (const auto& g : groups) digits += g;
  boost::multiprecision::cpp_int whole(digits);
  Rational value(whole);
  if (!fraction.empty()) {
    boost::multiprecision::cpp_int num(fraction);
    boost::multiprecision::cpp_int den = boost::multiprecision::pow(
        boost::multiprecision::cpp_int(10), static_cast<unsigned>(fraction.size()));
    value += Rational(num, den);
  }
  return ParsedAmount{value, Span{0, u.size()}, SourceForm::LatinNumeral};
}

namespace {

struct NumberItem {
  enum class Kind { Unit, Hundred, Multiplier, Numeral };
  Kind kind;
  Rational value;
  std::size_t token = 0;  // index of the source token
};

// Expands one normalized token into number items; empty when it is not numeric.
std::vector<NumberItem> classify_token(const std::string& token, std::size_t index,
                                       const MultiplierTable& table) {
  auto single = [&](const std::string& t) -> std::optional<NumberItem> {
    if (auto u = table.unit_value(t)) {
      return NumberItem{*u == kHundred ? NumberItem::Kind::Hundred : NumberItem::Kind::Unit,
                        Rational(*u), index};
    }
    if (auto m = table.multiplier_value(t)) {
      return NumberItem{NumberItem::Kind::Multiplier, Rational(*m), index};
    }
    return std::nullopt;
  };
  if (auto item = single(token)) return {*item};
  if (auto numeral = parse_latin_numeral(token)) {
    return {NumberItem{NumberItem::Kind::Numeral, numeral->value, index}};
  }
  if (token.find('-') != std::string::npos) {
    std::vector<NumberItem> parts;
    std::size_t start = 0;
    while (start <= token.size()) {
      std::size_t dash = token.find('-', start);
      if (dash == std::string::npos) dash = token.size();
      auto part = single(token.substr(start, dash - start));
      if (!part) return {};
      parts.push_back(*part);
      start = dash + 1;
    }
    return parts;
  }
  return {};
}

// State machine over number items. Each group is "[count hundred] [units]"
// closed by a multiplier; multipliers must strictly descend.
class Accumulator {
 public:
  bool feed(const NumberItem& item) {
    if (saw_zero_) return false;
    switch (item.kind) {
      case NumberItem::Kind::Unit: return feed_unit(item.value);
      case NumberItem::Kind::Hundred: return feed_hundred();
      case NumberItem::Kind::Multiplier: return feed_multiplier(item.value);
      case NumberItem::Kind::Numeral: return feed_numeral(item.value);
    }
    return false;
  }

  std::optional<Rational> finish() const {
    if (!any_) return std::nullopt;
    const Rational g = hundreds_ + small_;
    if (last_multiplier_ && g >= *last_multiplier_) return std::nullopt;
    return total_ + g;
  }

 private:
  enum class Small { None, Tens, Closed, Numeral };

  bool feed_unit(const Rational& u) {
    if (u == 0) {
      if (any_) return false;
      saw_zero_ = any_ = true;
      return true;
    }
    if (small_kind_ == Small::None) {
      small_ = u;
      small_kind_ = (u >= 20 && denominator(u) == 1 && numerator(u) % 10 == 0) ? Small::Tens : Small::Closed;
    } else if (small_kind_ == Small::Tens && u < 10) {
      small_ += u;
      small_kind_ = Small::Closed;
    } else {
      return false;
    }
    any_ = true;
    return true;
  }

  bool feed_hundred() {
    if (hundred_used_) return false;
    Rational count = 1;
    if (small_kind_ != Small::None) {
      if (small_ >= 100 || denominator(small_) != 1) return false;
      count = small_;
    }
    hundreds_ = count * kHundred;
    small_ = 0;
    small_kind_ = Small::None;
    hundred_used_ = any_ = true;
    return true;
  }

  bool feed_multiplier(const Rational& m) {
    const bool group_empty = small_kind_ == Small::None && !hundred_used_;
    const Rational g = hundreds_ + small_;
    if (last_multiplier_) {
      if (!group_empty && g >= *last_multiplier_) return false;
      if (m >= *last_multiplier_) {
        // Only crore may scale the whole count accumulated so far.
        if (m != kCrore || m <= max_multiplier_) return false;
        total_ = (total_ + g) * m;
      } else {
        if (group_empty) return false;
        total_ += g * m;
      }
    } else {
      if (group_empty && any_) return false;
      total_ += (group_empty ? Rational(1) : g) * m;
    }
    last_multiplier_ = m;
    if (m > max_multiplier_) max_multiplier_ = m;
    hundreds_ = 0;
    small_ = 0;
    small_kind_ = Small::None;
    hundred_used_ = false;
    any_ = true;
    return true;
  }

  bool feed_numeral(const Rational& n) {
    if (small_kind_ != Small::None || hundred_used_) return false;
    small_ = n;
    small_kind_ = Small::Numeral;
    any_ = true;
    return true;
  }

  Rational total_ = 0;
  Rational hundreds_ = 0;
  Rational small_ = 0;
  Small small_kind_ = Small::None;
  bool hundred_used_ = false;
  bool any_ = false;
  bool saw_zero_ = false;
  std::optional<Rational> last_multiplier_;
  Rational max_multiplier_ = 0;
};

std::optional<std::pair<Rational, SourceForm>> evaluate(std::span<const NumberItem> items) {
  if (items.empty()) return std::nullopt;
  Accumulator acc;
  bool numerals = false;
  bool words = false;
  for (const auto& item : items) {
    if (!acc.feed(item)) return std::nullopt;
    (item.kind == NumberItem::Kind::Numeral ? numerals : words) = true;
  }
  auto value = acc.finish();
  if (!value) return std::nullopt;
  const SourceForm form = numerals && words ? SourceForm::Mixed
                          : numerals        ? SourceForm::LatinNumeral
                                            : SourceForm::WordSequence;
  return std::make_pair(*value, form);
}

// Strips attached currency markers ("₹50,000", "500rs") when the remainder is
// numeric. Returns the token unchanged otherwise.
std::string strip_attached_marker(const std::string& token, const MultiplierTable& table) {
  for (const auto& m : table.currency_markers()) {
    if (token.size() > m.size() && token.compare(0, m.size(), m) == 0) {
      std::string rest = token.substr(m.size());
      if (!classify_token(rest, 0, table).empty()) return rest;
    }
    if (token.size() > m.size() &&
        token.compare(token.size() - m.size(), m.size(), m) == 0) {
      std::string rest = token.substr(0, token.size() - m.size());
      if (!classify_token(rest, 0, table).empty()) return rest;
    }
  }
  return token;
}

}  // namespace

std::optional<ParsedAmount> parse_number_words(std::span<const std::string> tokens,
                                               const MultiplierTable& table) {
  std::vector<NumberItem> items;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string t = casefold_normalize(tokens[i]);
    if (table.is_currency_marker(t)) continue;
    auto expanded = classify_token(strip_attached_marker(t, table), i, table);
    if (expanded.empty()) return std::nullopt;
    items.insert(items.end(), expanded.begin(), expanded.end());
  }
  auto result = evaluate(items);
  if (!result) return std::nullopt;
  return ParsedAmount{result->first, Span{0, tokens.size()}, result->second};
}

std::vector<ParsedAmount> parse_currency_expression(std::string_view text,
                                                    const MultiplierTable& table) {
  const std::vector<Token> tokens = tokenize_with_offsets(casefold_normalize(text));
  std::vector<ParsedAmount> out;
  std::vector<NumberItem> run;

  auto flush = [&] {
    std::size_t i = 0;
    while (i < run.size()) {
      bool emitted = false;
      for (std::size_t j = run.size(); j > i; --j) {
        auto result = evaluate(std::span<const NumberItem>(run).subspan(i, j - i));
        if (!result) continue;
        out.push_back(ParsedAmount{result->first,
                                   Span{tokens[run[i].token].begin, tokens[run[j - 1].token].end},
                                   result->second});
        i = j;
        emitted = true;
        break;
      }
      if (!emitted) ++i;
    }
    run.clear();
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i].text;
    if (table.is_currency_marker(t)) continue;
    auto items = classify_token(strip_attached_marker(t, table), i, table);
    if (items.empty()) {
      flush();
      continue;
    }
    run.insert(run.end(), items.begin(), items.end());
  }
  flush();
  return out;
}

// ---------------------------------------------------------------------------
// Spelling

namespace {

std::string required_unit(const MultiplierTable& table, std::int64_t v) {
  auto w = table.unit_word(v);
  if (!w) {
    throw ConfigError("lexicon '" + table.name() + "' has no word for " + std::to_string(v));
  }
  return *w;
}

std::string required_multiplier(const MultiplierTable& table, std::int64_t v) {
  auto w = table.multiplier_word(v);
  if (!w) {
    throw ConfigError("lexicon '" + table.name() + "' has no multiplier word for " +
                      std::to_string(v));
  }
  return *w;
}

void spell_below_hundred(std::int64_t n, const MultiplierTable& table,
                         std::vector<std::string>& out) {
  // A merged table may know "forty-two" only in English while having native
  // tens and ones; stay in one script when possible.
  const auto native = [&](std::int64_t v) { return table.unit_script(v) == LexiconScript::Native; };
  const bool compose = n > 20 && n % 10 != 0 && !native(n) && native(n - n % 10) && native(n % 10);
  if (auto w = table.unit_word(n); w && !compose) {
    out.push_back(*w);
    return;
  }
  out.push_back(required_unit(table, n - n % 10));
  out.push_back(required_unit(table, n % 10));
}

// n < 10^7, n > 0
void spell_below_crore(std::int64_t n, const MultiplierTable& table,
                       std::vector<std::string>& out) {
  const std::int64_t lakhs = n / kLakh;
  const std::int64_t thousands = (n % kLakh) / kThousand;
  const std::int64_t hundreds = (n % kThousand) / kHundred;
  const std::int64_t rest = n % kHundred;
  if (lakhs > 0) {
    spell_below_hundred(lakhs, table, out);
    out.push_back(required_multiplier(table, kLakh));
  }
  if (thousands > 0) {
    spell_below_hundred(thousands, table, out);
    out.push_back(required_multiplier(table, kThousand));
  }
  if (hundreds > 0) {
    spell_below_hundred(hundreds, table, out);
    out.push_back(required_unit(table, kHundred));
  }
  if (rest > 0) spell_below_hundred(rest, table, out);
}

}  // namespace

std::vector<std::string> spell_number(std::uint64_t value, const MultiplierTable& table) {
  if (value >= kSpellLimit) {
    throw RangeError("cannot spell " + std::to_string(value) + ": limit is 10^12");
  }
  std::vector<std::string> out;
  if (value == 0) {
    out.push_back(required_unit(table, 0));
    return out;
  }
  const auto v = static_cast<std::int64_t>(value);
  if (const std::int64_t crores = v / kCrore; crores > 0) {
    spell_below_crore(crores, table, out);
    out.push_back(required_multiplier(table, kCrore));
  }
  if (const std::int64_t rest = v % kCrore; rest > 0) spell_below_crore(rest, table, out);
  return out;
}

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

}  // namespace

std::string rewrite_digit_runs(std::string_view text, const MultiplierTable& table,
                               DigitRewriteMode mode) {
  const std::u32string u = to_u32(nfkc_normalize(text));
  std::string out;
  std::size_t i = 0;
  while (i < u.size()) {
    if (digit_value(u[i]) < 0) {
      out += to_utf8(std::u32string_view(u).substr(i, 1));
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < u.size() && digit_value(u[end]) >= 0) ++end;
    std::string spelled;
    if (mode == DigitRewriteMode::Grouped) {
      // Take in grouping commas when the wider run is a well-formed numeral.
      std::vector<std::size_t> boundaries{end};
      std::size_t wide = end;
      while (wide + 1 < u.size() && u[wide] == U',' && digit_value(u[wide + 1]) >= 0) {
        ++wide;
        while (wide < u.size() && digit_value(u[wide]) >= 0) ++wide;
        boundaries.push_back(wide);
      }
      for (auto b = boundaries.rbegin(); b != boundaries.rend(); ++b) {
        if (parse_latin_numeral(to_utf8(std::u32string_view(u).substr(i, *b - i)))) {
          end = *b;
          break;
        }
      }
      const auto numeral = parse_latin_numeral(to_utf8(std::u32string_view(u).substr(i, end - i)));
      const auto& whole = numerator(numeral->value);
      if (whole >= kSpellLimit) {
        throw RangeError("digit run '" + to_utf8(std::u32string_view(u).substr(i, end - i)) +
                         "' exceeds the spelling range");
      }
      spelled = join(spell_number(whole.convert_to<std::uint64_t>(), table));
    } else {
      std::vector<std::string> words;
      for (std::size_t k = i; k < end; ++k) {
        words.push_back(required_unit(table, digit_value(u[k])));
      }
      spelled = join(words);
    }
    if (i > 0 && !is_white_space(u[i - 1])) out.push_back(' ');
    out += spelled;
    if (end < u.size() && !is_white_space(u[end])) out.push_back(' ');
    i = end;
  }
  return out;
}

std::string spoken_digit_sequence(std::string_view text, const MultiplierTable& table) {
  std::string digits;
  for (const auto& token : tokenize(casefold_normalize(text))) {
    auto items = classify_token(token, 0, table);
    bool all_units = !items.empty();
    std::string from_words;
    for (const auto& item : items) {
      if (item.kind != NumberItem::Kind::Unit) {
        all_units = false;
        break;
      }
      from_words += numerator(item.value).str();
    }
    if (all_units) {
      digits += from_words;
      continue;
    }
    for (char32_t c : to_u32(token)) {
      if (const int d = digit_value(c); d >= 0) digits.push_back(static_cast<char>('0' + d));
    }
  }
  return digits;
}

std::string format_rational(const Rational& value) {
  using boost::multiprecision::cpp_int;
  cpp_int num = numerator(value);
  cpp_int den = denominator(value);
  cpp_int d = den;
  unsigned places = 0;
  while (d % 10 == 0) {
    d /= 10;
    ++places;
  }
  while (d % 2 == 0 || d % 5 == 0) {
    // Scale to a power of ten so the decimal expansion terminates.
    num *= (d % 2 == 0) ? 5 : 2;
    d /= (d % 2 == 0) ? 2 : 5;
    ++places;
  }
  if (d != 1) return num.str() + "/" + den.str();
  std::string digits = num.str();
  if (places == 0) return digits;
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return digits;
}

}  // namespace entityscore
