#include "entityscore/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "entityscore/errors.hpp"
#include "entityscore/textnorm.hpp"

namespace entityscore {

using nlohmann::json;

std::string_view synth_system_name(SynthSystem s) {
  switch (s) {
    case SynthSystem::Praxy: return "praxy";
    case SynthSystem::Chatterbox: return "chatterbox";
    case SynthSystem::IndicF5: return "indicf5";
    case SynthSystem::ElevenLabs: return "elevenlabs";
    case SynthSystem::Cartesia: return "cartesia";
  }
  return "?";
}

SynthSystem parse_synth_system(std::string_view name) {
  for (SynthSystem s : {SynthSystem::Praxy, SynthSystem::Chatterbox, SynthSystem::IndicF5,
                        SynthSystem::ElevenLabs, SynthSystem::Cartesia}) {
    if (synth_system_name(s) == name) return s;
  }
  throw DataError("unknown synth system '" + std::string(name) + "'");
}

std::string_view row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::Pending: return "pending";
    case RowStatus::Synthesized: return "synthesized";
    case RowStatus::FilteredOut: return "filtered_out";
    case RowStatus::Accepted: return "accepted";
  }
  return "?";
}

RowStatus parse_row_status(std::string_view name) {
  for (RowStatus s : {RowStatus::Pending, RowStatus::Synthesized, RowStatus::FilteredOut,
                      RowStatus::Accepted}) {
    if (row_status_name(s) == name) return s;
  }
  throw DataError("unknown row status '" + std::string(name) + "'");
}

bool can_transition(RowStatus from, RowStatus to) {
  if (from == to) return true;
  switch (from) {
    case RowStatus::Pending: return true;
    case RowStatus::Synthesized: return to == RowStatus::FilteredOut || to == RowStatus::Accepted;
    case RowStatus::FilteredOut:
    case RowStatus::Accepted: return false;
  }
  return false;
}

void ManifestRow::set_status(RowStatus next) {
  if (!can_transition(status, next)) {
    throw DataError("row '" + id + "': cannot move from " + std::string(row_status_name(status)) +
                    " to " + std::string(row_status_name(next)));
  }
  status = next;
}

std::optional<MatcherClass> default_matcher_class(std::string_view corpus_class) {
  if (corpus_class == "digits" || corpus_class == "digit") return MatcherClass::DigitRun;
  if (corpus_class == "brands" || corpus_class == "brand") return MatcherClass::Brand;
  if (corpus_class == "currency") return MatcherClass::CurrencyAmount;
  if (corpus_class == "proper_nouns" || corpus_class == "proper_noun") {
    return MatcherClass::ProperNoun;
  }
  return std::nullopt;
}

namespace {

class LineError {
 public:
  LineError(std::string_view source, std::size_t line) : prefix_(std::string(source) + ":" + std::to_string(line) + ": ") {}
  DataError operator()(const std::string& what) const { return DataError(prefix_ + what); }

 private:
  std::string prefix_;
};

// Reads one JSON object per non-blank line.
template <typename Fn>
void for_each_record(std::istream& in, std::string_view source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const LineError fail(source, line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) throw fail("record is not a JSON object");
    try {
      fn(record, line_no, fail);
    } catch (const json::exception& e) {
      throw fail(e.what());
    }
  }
}

std::string required_string(const json& record, const char* field, const LineError& fail) {
  auto it = record.find(field);
  if (it == record.end()) throw fail(std::string("missing field '") + field + "'");
  if (!it->is_string()) throw fail(std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::string optional_string(const json& record, const char* field, const LineError& fail) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) return {};
  if (!it->is_string()) throw fail(std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::optional<Language> record_language(const json& record, const LineError& fail) {
  for (const char* field : {"language", "lang"}) {
    auto it = record.find(field);
    if (it == record.end() || it->is_null()) continue;
    if (!it->is_string()) throw fail(std::string("field '") + field + "' must be a string");
    try {
      return parse_language(it->get<std::string>());
    } catch (const ConfigError& e) {
      throw fail(std::string("field '") + field + "': " + e.what());
    }
  }
  return std::nullopt;
}

std::vector<EntityToken> parse_entity_tokens(const json& record, std::string_view row_class,
                                             Language lang, const LineError& fail) {
  std::vector<EntityToken> out;
  auto it = record.find("entity_tokens");
  if (it == record.end() || it->is_null()) return out;
  if (!it->is_array()) throw fail("field 'entity_tokens' must be an array");
  for (const auto& item : *it) {
    EntityToken token;
    token.language = lang;
    std::optional<MatcherClass> cls;
    if (item.is_string()) {
      token.surface = item.get<std::string>();
    } else if (item.is_object()) {
      for (const char* f : {"surface", "text", "token"}) {
        if (auto s = item.find(f); s != item.end() && s->is_string()) {
          token.surface = s->get<std::string>();
          break;
        }
      }
      for (const char* f : {"matcher_class", "class"}) {
        if (auto c = item.find(f); c != item.end() && c->is_string()) {
          cls = parse_matcher_class(c->get<std::string>());
          if (!cls) {
            throw fail("field 'entity_tokens': unknown matcher class '" + c->get<std::string>() + "'");
          }
          break;
        }
      }
      if (auto l = item.find("language"); l != item.end() && l->is_string()) {
        token.language = parse_language(l->get<std::string>());
      }
    } else {
      throw fail("field 'entity_tokens': entries must be strings or objects");
    }
    if (token.surface.empty()) throw fail("field 'entity_tokens': empty entity surface");
    if (!cls) cls = default_matcher_class(row_class);
    if (!cls) {
      throw fail("field 'entity_tokens': entity '" + token.surface +
                 "' needs an explicit matcher class for row class '" + std::string(row_class) + "'");
    }
    token.matcher_class = *cls;
    out.push_back(std::move(token));
  }
  return out;
}

json entity_tokens_json(const std::vector<EntityToken>& tokens, Language row_lang) {
  json out = json::array();
  for (const auto& t : tokens) {
    json item = {{"surface", t.surface}, {"matcher_class", matcher_class_name(t.matcher_class)}};
    if (t.language != row_lang) item["language"] = language_code(t.language);
    out.push_back(std::move(item));
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<HoldoutRow> parse_holdout(std::istream& in, std::string_view source,
                                      std::optional<Language> default_language) {
  std::vector<HoldoutRow> rows;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_record(in, source, [&](const json& r, std::size_t line, const LineError& fail) {
    HoldoutRow row;
    row.line = line;
    row.id = required_string(r, "id", fail);
    if (row.id.empty()) throw fail("field 'id' is empty");
    row.text = required_string(r, "text", fail);
    row.audio_path = optional_string(r, "audio_path", fail);
    row.entity_class = optional_string(r, "entity_class", fail);
    auto lang = record_language(r, fail);
    if (!lang) lang = default_language;
    if (!lang) throw fail("missing field 'language' and no default language given");
    row.language = *lang;
    row.entity_tokens = parse_entity_tokens(r, row.entity_class, row.language, fail);
    if (auto [it, inserted] = seen.emplace(row.id, line); !inserted) {
      throw DataError(std::string(source) + ": duplicate id '" + row.id + "' on lines " +
                      std::to_string(it->second) + " and " + std::to_string(line));
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

std::vector<HoldoutRow> load_holdout(const std::filesystem::path& path,
                                     std::optional<Language> default_language) {
  auto in = open_input(path);
  return parse_holdout(in, path.string(), default_language);
}

json to_json(const HoldoutRow& row) {
  return json{{"id", row.id},
              {"text", row.text},
              {"audio_path", row.audio_path},
              {"entity_tokens", entity_tokens_json(row.entity_tokens, row.language)},
              {"entity_class", row.entity_class},
              {"language", language_code(row.language)}};
}

std::vector<Prediction> parse_predictions(std::istream& in, std::string_view source,
                                          std::string_view default_system) {
  std::vector<Prediction> out;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_record(in, source, [&](const json& r, std::size_t line, const LineError& fail) {
    Prediction p;
    p.line = line;
    p.id = required_string(r, "id", fail);
    p.hypothesis = required_string(r, "hypothesis", fail);
    p.system = optional_string(r, "system", fail);
    if (p.system.empty()) p.system = default_system;
    for (const auto& [key, value] : r.items()) {
      if (key != "id" && key != "hypothesis" && key != "system") p.extra[key] = value;
    }
    const std::string key = p.system + '\x1f' + p.id;
    if (auto [it, inserted] = seen.emplace(key, line); !inserted) {
      throw DataError(std::string(source) + ": duplicate prediction for id '" + p.id +
                      "' (system '" + p.system + "') on lines " + std::to_string(it->second) +
                      " and " + std::to_string(line));
    }
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path,
                                         std::string_view default_system) {
  auto in = open_input(path);
  const std::string fallback =
      default_system.empty() ? path.stem().string() : std::string(default_system);
  return parse_predictions(in, path.string(), fallback);
}

std::vector<ManifestRow> parse_manifest(std::istream& in, std::string_view source) {
  static const std::unordered_set<std::string> kKnown = {
      "id", "text", "language", "lang", "corpus_class", "entity_class", "synth_system",
      "cer_against_source", "status", "entity_tokens"};
  std::vector<ManifestRow> rows;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_record(in, source, [&](const json& r, std::size_t line, const LineError& fail) {
    ManifestRow row;
    row.line = line;
    row.id = required_string(r, "id", fail);
    row.text = required_string(r, "text", fail);
    auto lang = record_language(r, fail);
    if (!lang) throw fail("missing field 'language'");
    row.language = *lang;
    row.corpus_class = optional_string(r, "corpus_class", fail);
    if (row.corpus_class.empty()) row.corpus_class = optional_string(r, "entity_class", fail);
    if (auto s = optional_string(r, "synth_system", fail); !s.empty()) {
      try {
        row.synth_system = parse_synth_system(s);
      } catch (const DataError& e) {
        throw fail(std::string("field 'synth_system': ") + e.what());
      }
    }
    if (auto c = r.find("cer_against_source"); c != r.end() && !c->is_null()) {
      if (!c->is_number()) throw fail("field 'cer_against_source' must be a number");
      row.cer_against_source = c->get<double>();
      if (*row.cer_against_source < 0) throw fail("field 'cer_against_source' is negative");
    }
    if (auto s = optional_string(r, "status", fail); !s.empty()) {
      try {
        row.status = parse_row_status(s);
      } catch (const DataError& e) {
        throw fail(std::string("field 'status': ") + e.what());
      }
    }
    row.entity_tokens = parse_entity_tokens(r, row.corpus_class, row.language, fail);
    for (const auto& [key, value] : r.items()) {
      if (kKnown.count(key) == 0) row.extra[key] = value;
    }
    if (auto [it, inserted] = seen.emplace(row.id, line); !inserted) {
      throw DataError(std::string(source) + ": duplicate id '" + row.id + "' on lines " +
                      std::to_string(it->second) + " and " + std::to_string(line));
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

std::vector<ManifestRow> load_manifest(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_manifest(in, path.string());
}

json to_json(const ManifestRow& row) {
  json out = {{"id", row.id},
              {"text", row.text},
              {"language", language_code(row.language)},
              {"corpus_class", row.corpus_class},
              {"status", row_status_name(row.status)}};
  if (row.synth_system) out["synth_system"] = synth_system_name(*row.synth_system);
  if (row.cer_against_source) out["cer_against_source"] = *row.cer_against_source;
  if (!row.entity_tokens.empty()) {
    out["entity_tokens"] = entity_tokens_json(row.entity_tokens, row.language);
  }
  for (const auto& [key, value] : row.extra.items()) out[key] = value;
  return out;
}

void write_manifest(std::ostream& out, std::span<const ManifestRow> rows) {
  for (const auto& row : rows) out << to_json(row).dump() << '\n';
}

void write_manifest(const std::filesystem::path& path, std::span<const ManifestRow> rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  write_manifest(out, rows);
}

std::vector<DictionaryEntry> load_entity_dictionary(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<DictionaryEntry> out;
  for_each_record(in, path.string(), [&](const json& r, std::size_t, const LineError& fail) {
    DictionaryEntry e;
    for (const char* f : {"surface", "entity", "text"}) {
      if (auto s = r.find(f); s != r.end() && s->is_string()) {
        e.surface = s->get<std::string>();
        break;
      }
    }
    if (e.surface.empty()) throw fail("missing field 'surface'");
    if (auto a = r.find("aliases"); a != r.end() && !a->is_null()) {
      if (!a->is_array()) throw fail("field 'aliases' must be an array");
      for (const auto& alias : *a) {
        if (!alias.is_string()) throw fail("field 'aliases' must hold strings");
        e.aliases.push_back(alias.get<std::string>());
      }
    }
    out.push_back(std::move(e));
  });
  return out;
}

BrandAliasTable brand_aliases_from(std::span<const DictionaryEntry> entries) {
  BrandAliasTable table;
  for (const auto& e : entries) table.add(e.surface, e.aliases);
  return table;
}

std::string_view violation_kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::ScriptPurity: return "script_purity";
    case Violation::Kind::MissingEntity: return "missing_entity";
    case Violation::Kind::Length: return "length";
  }
  return "?";
}

std::vector<Violation> validate_corpus_row(std::string_view text,
                                           std::span<const EntityToken> entities,
                                           Language lang, const ValidationConfig& config) {
  std::vector<Violation> out;
  const std::u32string body = to_u32(nfkc_normalize(text));

  // Mark every occurrence of every entity surface, then merge into spans.
  std::vector<bool> covered(body.size(), false);
  std::vector<std::string> missing;
  for (const auto& e : entities) {
    const std::u32string needle = to_u32(nfkc_normalize(e.surface));
    if (needle.empty()) continue;
    bool found = false;
    for (std::size_t pos = body.find(needle); pos != std::u32string::npos;
         pos = body.find(needle, pos + 1)) {
      found = true;
      std::fill(covered.begin() + pos, covered.begin() + pos + needle.size(), true);
    }
    if (!found) missing.push_back(e.surface);
  }
  std::vector<Span> spans;
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) continue;
    std::size_t j = i;
    while (j < covered.size() && covered[j]) ++j;
    spans.push_back({i, j});
    i = j;
  }

  const std::string normalized = to_utf8(body);
  if (!script_purity_check(normalized, lang, spans, config.purity_threshold)) {
    SfrResult outside;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (covered[i] || !is_letter(body[i])) continue;
      ++outside.letter_count;
      if (script_block(lang).contains(body[i])) ++outside.in_block_count;
    }
    const auto value = outside.value();
    char buf[96];
    if (value) {
      std::snprintf(buf, sizeof buf, "script fidelity %.3f below %.3f outside entity spans",
                    *value, config.purity_threshold);
    } else {
      std::snprintf(buf, sizeof buf, "no letters outside entity spans");
    }
    out.push_back({Violation::Kind::ScriptPurity, buf});
  }
  for (const auto& m : missing) {
    out.push_back({Violation::Kind::MissingEntity, "entity '" + m + "' not found in text"});
  }
  const std::size_t n = tokenize(normalized).size();
  if (n < config.min_tokens || n > config.max_tokens) {
    out.push_back({Violation::Kind::Length, std::to_string(n) + " tokens, expected " +
                                                std::to_string(config.min_tokens) + "-" +
                                                std::to_string(config.max_tokens)});
  }
  return out;
}

std::vector<Violation> validate_corpus_row(const ManifestRow& row, const ValidationConfig& config) {
  return validate_corpus_row(row.text, row.entity_tokens, row.language, config);
}

std::string dedup_key(std::string_view text) {
  return collapse_whitespace(casefold_normalize(text));
}

template <typename Row>
std::vector<Row> dedup_rows(std::vector<Row> rows) {
  std::unordered_set<std::string> seen;
  std::vector<Row> out;
  out.reserve(rows.size());
  for (auto& row : rows) {
    if (seen.insert(dedup_key(row.text)).second) out.push_back(std::move(row));
  }
  return out;
}

template std::vector<HoldoutRow> dedup_rows(std::vector<HoldoutRow>);
template std::vector<ManifestRow> dedup_rows(std::vector<ManifestRow>);

}  // namespace entityscore
