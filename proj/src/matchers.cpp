#include "entityscore/matchers.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "entityscore/errors.hpp"
#include "entityscore/textnorm.hpp"

namespace entityscore {

std::string_view matcher_class_name(MatcherClass c) {
  switch (c) {
    case MatcherClass::DigitRun: return "digit_run";
    case MatcherClass::Pincode: return "pincode";
    case MatcherClass::CurrencyAmount: return "currency_amount";
    case MatcherClass::Brand: return "brand";
    case MatcherClass::ProperNoun: return "proper_noun";
    case MatcherClass::SpelledDigit: return "spelled_digit";
    case MatcherClass::HouseOrPlot: return "house_or_plot";
  }
  return "?";
}

std::optional<MatcherClass> parse_matcher_class(std::string_view name) {
  for (MatcherClass c : kAllMatcherClasses) {
    if (matcher_class_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view currency_mode_name(CurrencyMode m) {
  return m == CurrencyMode::Strict ? "strict" : "bidirectional";
}

CurrencyMode parse_currency_mode(std::string_view name) {
  if (name == "strict") return CurrencyMode::Strict;
  if (name == "bidirectional") return CurrencyMode::Bidirectional;
  throw ConfigError("unknown currency mode '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> folded_tokens(std::string_view s) {
  return tokenize(casefold_normalize(s));
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

bool contains_sequence(const std::vector<std::string>& haystack,
                       const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

void require_class(const EntityToken& token, MatcherClass expected) {
  if (token.matcher_class != expected) {
    throw std::invalid_argument("token '" + token.surface + "' is " +
                                std::string(matcher_class_name(token.matcher_class)) +
                                ", not " + std::string(matcher_class_name(expected)));
  }
}

MatchResult miss(MatcherClass c, std::string detail = {}) { return {false, c, std::move(detail)}; }
MatchResult hit(MatcherClass c, std::string detail) { return {true, c, std::move(detail)}; }

bool reaches(double value, double threshold) { return value + 1e-12 >= threshold; }

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

bool is_digit_cluster_separator(char32_t c) {
  return is_white_space(c) || c == U',' || c == U'-';
}

// True when some contiguous range of groups in one cluster concatenates to `digits`.
bool clusters_contain(const std::vector<std::vector<std::string>>& clusters,
                      const std::string& digits) {
  for (const auto& groups : clusters) {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      std::string joined;
      for (std::size_t j = i; j < groups.size() && joined.size() < digits.size(); ++j) {
        joined += groups[j];
        if (joined == digits) return true;
      }
    }
  }
  return false;
}

std::string digits_of(std::string_view s) {
  std::string out;
  for (char32_t c : to_u32(nfkc_normalize(s))) {
    if (const int d = digit_value(c); d >= 0) out.push_back(static_cast<char>('0' + d));
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> digit_clusters(std::string_view hypothesis) {
  const std::u32string u = to_u32(nfkc_normalize(hypothesis));
  std::vector<std::vector<std::string>> clusters;
  std::size_t i = 0;
  std::size_t last_group_end = std::u32string::npos;
  while (i < u.size()) {
    if (digit_value(u[i]) < 0) {
      ++i;
      continue;
    }
    std::string group;
    const std::size_t begin = i;
    while (i < u.size() && digit_value(u[i]) >= 0) {
      group.push_back(static_cast<char>('0' + digit_value(u[i])));
      ++i;
    }
    const bool joins = last_group_end != std::u32string::npos &&
                       std::all_of(u.begin() + last_group_end, u.begin() + begin,
                                   is_digit_cluster_separator);
    if (!joins) clusters.emplace_back();
    clusters.back().push_back(std::move(group));
    last_group_end = i;
  }
  return clusters;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::set<std::string> sa(a.begin(), a.end());
  const std::set<std::string> sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& x : sa) inter += sb.count(x);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::size_t lcs_length(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// ---------------------------------------------------------------------------
// Brand aliases

void BrandAliasTable::add(std::string canonical, std::vector<std::string> aliases) {
  Brand brand;
  brand.canonical = canonical;
  aliases.insert(aliases.begin(), canonical);
  std::size_t id = brands_.size();
  // A name already registered extends the existing brand.
  for (const auto& a : aliases) {
    auto it = index_.find(join_tokens(folded_tokens(a)));
    if (it != index_.end()) {
      id = it->second;
      break;
    }
  }
  if (id == brands_.size()) brands_.push_back(std::move(brand));
  Brand& target = brands_[id];
  for (const auto& a : aliases) {
    auto tokens = folded_tokens(a);
    if (tokens.empty()) continue;
    const std::string key = join_tokens(tokens);
    if (auto it = index_.find(key); it != index_.end()) {
      if (it->second != id) {
        throw DataError("brand alias '" + a + "' already belongs to '" +
                        brands_[it->second].canonical + "'");
      }
      if (std::find(target.aliases.begin(), target.aliases.end(), tokens) != target.aliases.end()) {
        continue;
      }
    }
    index_[key] = id;
    target.aliases.push_back(std::move(tokens));
  }
}

BrandAliasTable BrandAliasTable::parse(std::string_view contents, std::string_view source) {
  BrandAliasTable table;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) tab = line.size();
      std::string field = collapse_whitespace(line.substr(start, tab - start));
      if (!field.empty()) fields.push_back(std::move(field));
      start = tab + 1;
    }
    if (fields.empty()) continue;
    try {
      std::string canonical = fields.front();
      fields.erase(fields.begin());
      table.add(std::move(canonical), std::move(fields));
    } catch (const DataError& e) {
      throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

BrandAliasTable BrandAliasTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open brand alias table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const std::vector<std::vector<std::string>>* BrandAliasTable::aliases_for(
    std::string_view surface) const {
  auto it = index_.find(join_tokens(folded_tokens(surface)));
  if (it == index_.end()) return nullptr;
  return &brands_[it->second].aliases;
}

// ---------------------------------------------------------------------------
// Class matchers

MatchResult match_digit_run(const EntityToken& token, std::string_view hypothesis) {
  require_class(token, MatcherClass::DigitRun);
  const std::string ref = digits_of(token.surface);
  if (ref.empty()) {
    throw ValidationError("digit_run entity '" + token.surface + "' contains no digits");
  }
  if (clusters_contain(digit_clusters(hypothesis), ref)) {
    return hit(MatcherClass::DigitRun, "digits " + ref);
  }
  return miss(MatcherClass::DigitRun);
}

MatchResult match_pincode(const EntityToken& token, std::string_view hypothesis) {
  require_class(token, MatcherClass::Pincode);
  std::string ref;
  for (char32_t c : to_u32(nfkc_normalize(token.surface))) {
    if (is_white_space(c)) continue;
    const int d = digit_value(c);
    if (d < 0) {
      ref.clear();
      break;
    }
    ref.push_back(static_cast<char>('0' + d));
  }
  if (ref.size() != 6) {
    throw ValidationError("pincode entity '" + token.surface + "' is not six digits");
  }
  if (clusters_contain(digit_clusters(hypothesis), ref)) {
    return hit(MatcherClass::Pincode, "pincode " + ref);
  }
  return miss(MatcherClass::Pincode);
}

MatchResult match_currency(const EntityToken& token, std::string_view hypothesis,
                           const MultiplierTable& table, CurrencyMode mode,
                           const Rational& tolerance) {
  require_class(token, MatcherClass::CurrencyAmount);
  const auto refs = parse_currency_expression(token.surface, table);
  if (refs.empty()) {
    throw ValidationError("currency entity '" + token.surface + "' has no parsable amount");
  }
  const ParsedAmount* ref = &refs.front();
  for (const auto& r : refs) {
    if (r.consumed.end - r.consumed.begin > ref->consumed.end - ref->consumed.begin) ref = &r;
  }
  // Strict mode only protects amounts spelled in native-script words; English
  // words ("five hundred thousand") cross-match any form.
  bool native_words = false;
  if (ref->source_form == SourceForm::WordSequence) {
    const std::u32string u = to_u32(casefold_normalize(token.surface));
    for (std::size_t i = ref->consumed.begin; i < ref->consumed.end && i < u.size(); ++i) {
      if (is_letter(u[i]) && u[i] > 0x024F) native_words = true;
    }
  }
  const Rational allowed = tolerance * ref->value;
  for (const auto& h : parse_currency_expression(hypothesis, table)) {
    if (mode == CurrencyMode::Strict && native_words &&
        h.source_form != SourceForm::WordSequence) {
      continue;
    }
    Rational diff = h.value - ref->value;
    if (diff < 0) diff = -diff;
    if (diff <= allowed) {
      return hit(MatcherClass::CurrencyAmount,
                 "ref " + format_rational(ref->value) + " hyp " + format_rational(h.value));
    }
  }
  return miss(MatcherClass::CurrencyAmount, "ref " + format_rational(ref->value));
}

MatchResult match_brand(const EntityToken& token, std::string_view hypothesis,
                        const BrandAliasTable& aliases) {
  require_class(token, MatcherClass::Brand);
  const auto hyp = folded_tokens(hypothesis);
  const auto* known = aliases.aliases_for(token.surface);
  std::vector<std::vector<std::string>> fallback;
  if (known == nullptr) {
    fallback.push_back(folded_tokens(token.surface));
    known = &fallback;
  }
  for (const auto& alias : *known) {
    if (contains_sequence(hyp, alias)) {
      std::string detail = "alias '" + join_tokens(alias) + "'";
      if (!fallback.empty()) detail += " (no alias entry, surface only)";
      return hit(MatcherClass::Brand, std::move(detail));
    }
  }
  return miss(MatcherClass::Brand, fallback.empty() ? "" : "no alias entry, surface only");
}

MatchResult match_proper_noun(const EntityToken& token, std::string_view hypothesis,
                              double threshold, std::size_t window_slack) {
  require_class(token, MatcherClass::ProperNoun);
  const auto ref = folded_tokens(token.surface);
  const auto hyp = folded_tokens(hypothesis);
  if (ref.empty() || hyp.empty()) return miss(MatcherClass::ProperNoun);
  const std::size_t k = std::set<std::string>(ref.begin(), ref.end()).size();
  const std::size_t shortest = k > window_slack ? k - window_slack : 1;
  double best = 0.0;
  if (hyp.size() < shortest) best = jaccard(ref, hyp);
  for (std::size_t len = shortest; len <= k + window_slack && len <= hyp.size(); ++len) {
    for (std::size_t start = 0; start + len <= hyp.size(); ++start) {
      std::vector<std::string> window(hyp.begin() + start, hyp.begin() + start + len);
      best = std::max(best, jaccard(ref, window));
    }
  }
  const std::string detail = "jaccard " + fixed3(best);
  return reaches(best, threshold) ? hit(MatcherClass::ProperNoun, detail)
                                  : miss(MatcherClass::ProperNoun, detail);
}

MatchResult match_spelled_digit(const EntityToken& token, std::string_view hypothesis,
                                const MultiplierTable& table, double threshold) {
  require_class(token, MatcherClass::SpelledDigit);
  const std::string ref = spoken_digit_sequence(token.surface, table);
  if (ref.empty()) {
    throw ValidationError("spelled_digit entity '" + token.surface + "' yields no digits");
  }
  const std::string hyp = spoken_digit_sequence(hypothesis, table);
  const std::size_t common = lcs_length(ref, hyp);
  const double ratio = static_cast<double>(common) / static_cast<double>(ref.size());
  const std::string detail = "lcs " + std::to_string(common) + "/" + std::to_string(ref.size());
  return reaches(ratio, threshold) ? hit(MatcherClass::SpelledDigit, detail)
                                   : miss(MatcherClass::SpelledDigit, detail);
}

MatchResult match_house_or_plot(const EntityToken& token, std::string_view hypothesis) {
  require_class(token, MatcherClass::HouseOrPlot);
  const auto ref = folded_tokens(token.surface);
  if (contains_sequence(folded_tokens(hypothesis), ref)) {
    return hit(MatcherClass::HouseOrPlot, "tokens '" + join_tokens(ref) + "'");
  }
  return miss(MatcherClass::HouseOrPlot);
}

std::vector<MatchResult> score_utterance(std::span<const EntityToken> tokens,
                                         std::string_view hypothesis,
                                         const MatcherConfig& config) {
  static const BrandAliasTable kNoAliases;
  const BrandAliasTable& aliases = config.aliases ? *config.aliases : kNoAliases;
  std::vector<MatchResult> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    switch (token.matcher_class) {
      case MatcherClass::DigitRun:
        out.push_back(match_digit_run(token, hypothesis));
        break;
      case MatcherClass::Pincode:
        out.push_back(match_pincode(token, hypothesis));
        break;
      case MatcherClass::CurrencyAmount:
        out.push_back(match_currency(token, hypothesis, config.number_table(),
                                     config.currency_mode, config.currency_tolerance));
        break;
      case MatcherClass::Brand:
        out.push_back(match_brand(token, hypothesis, aliases));
        break;
      case MatcherClass::ProperNoun:
        out.push_back(match_proper_noun(token, hypothesis, config.jaccard_threshold,
                                        config.window_slack));
        break;
      case MatcherClass::SpelledDigit:
        out.push_back(match_spelled_digit(token, hypothesis, config.number_table(),
                                          config.lcs_threshold));
        break;
      case MatcherClass::HouseOrPlot:
        out.push_back(match_house_or_plot(token, hypothesis));
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation

void finalize_ehr(EhrReport& report) {
  std::size_t n = 0;
  std::size_t hits = 0;
  double rate_sum = 0.0;
  std::size_t classes = 0;
  for (const auto& [cls, tally] : report.per_class) {
    if (tally.n == 0) continue;
    n += tally.n;
    hits += tally.hits;
    rate_sum += *tally.rate();
    ++classes;
  }
  report.micro = n == 0 ? std::nullopt
                        : std::optional<double>(static_cast<double>(hits) / static_cast<double>(n));
  report.macro = classes == 0 ? std::nullopt
                              : std::optional<double>(rate_sum / static_cast<double>(classes));
}

EhrReport aggregate_ehr(std::span<const ClassHit> results,
                        std::span<const std::string> include_classes) {
  EhrReport report;
  for (const auto& cls : include_classes) report.per_class[cls];
  for (const auto& r : results) {
    auto& tally = report.per_class[r.cls];
    ++tally.n;
    if (r.hit) ++tally.hits;
  }
  finalize_ehr(report);
  return report;
}

EhrReport aggregate_ehr(std::span<const MatchResult> results) {
  std::vector<ClassHit> hits;
  hits.reserve(results.size());
  for (const auto& r : results) hits.push_back({std::string(matcher_class_name(r.matcher_class)), r.hit});
  std::vector<std::string> all;
  for (MatcherClass c : kAllMatcherClasses) all.emplace_back(matcher_class_name(c));
  return aggregate_ehr(hits, all);
}

}  // namespace entityscore
