#include "entityscore/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entityscore/errors.hpp"

namespace entityscore {

RouterPolicy RouterPolicy::standard(std::uint64_t seed) {
  RouterPolicy p;
  p.weights = {{SynthSystem::Praxy, 0.60},
               {SynthSystem::ElevenLabs, 0.20},
               {SynthSystem::Cartesia, 0.20}};
  p.overrides = {{"codemix", SynthSystem::IndicF5}};
  p.substitutions = {{Language::Hindi, SynthSystem::Praxy, SynthSystem::Chatterbox}};
  p.seed = seed;
  return p;
}

void RouterPolicy::validate() const {
  if (weights.empty()) throw ConfigError("router policy has no weights");
  double sum = 0.0;
  for (const auto& [backend, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ConfigError("router weight for " + std::string(synth_system_name(backend)) +
                        " must be a non-negative number");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "router weights sum to " << sum << ", expected 1";
    throw ConfigError(msg.str());
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t route_hash(std::uint64_t seed, std::string_view id) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(h ^ splitmix64(seed));
}

SynthSystem route_utterance(const ManifestRow& row, const RouterPolicy& policy) {
  for (const auto& o : policy.overrides) {
    if (row.corpus_class == o.corpus_class) return o.target;
  }
  const double u =
      static_cast<double>(route_hash(policy.seed, row.id) >> 11) * 0x1.0p-53;
  SynthSystem drawn = policy.weights.back().first;
  double cumulative = 0.0;
  for (const auto& [backend, w] : policy.weights) {
    cumulative += w;
    if (u < cumulative) {
      drawn = backend;
      break;
    }
  }
  for (const auto& s : policy.substitutions) {
    if (row.language == s.language && drawn == s.bucket) return s.replacement;
  }
  return drawn;
}

std::vector<ManifestRow> route_manifest(std::vector<ManifestRow> rows, const RouterPolicy& policy) {
  policy.validate();
  for (auto& row : rows) row.synth_system = route_utterance(row, policy);
  return rows;
}

CerFilterResult apply_cer_filter(std::vector<ManifestRow> rows, double threshold) {
  std::string missing;
  for (const auto& row : rows) {
    if (!row.cer_against_source) missing += (missing.empty() ? "" : ", ") + row.id;
  }
  if (!missing.empty()) throw DataError("rows without cer_against_source: " + missing);
  CerFilterResult out;
  for (auto& row : rows) {
    if (*row.cer_against_source > threshold) {
      row.set_status(RowStatus::FilteredOut);
      out.rejected.push_back(std::move(row));
    } else {
      row.set_status(RowStatus::Accepted);
      out.accepted.push_back(std::move(row));
    }
  }
  return out;
}

SynthCounts count_synth_systems(std::span<const ManifestRow> rows) {
  SynthCounts counts;
  for (const auto& row : rows) {
    if (!row.synth_system) continue;
    SynthSystem s = *row.synth_system;
    if (s == SynthSystem::Chatterbox) s = SynthSystem::Praxy;
    auto& lang = counts.by_language[std::string(language_code(row.language))];
    ++lang[std::string(synth_system_name(s))];
    ++lang["total"];
  }
  return counts;
}

std::string format_synth_counts(const SynthCounts& counts) {
  static constexpr std::string_view kColumns[] = {"praxy", "elevenlabs", "cartesia", "indicf5",
                                                  "total"};
  std::ostringstream out;
  out << "lang";
  for (auto c : kColumns) out << '\t' << c;
  out << '\n';
  for (const auto& [lang, by_system] : counts.by_language) {
    out << lang;
    for (auto c : kColumns) {
      auto it = by_system.find(std::string(c));
      out << '\t' << (it == by_system.end() ? 0 : it->second);
    }
    out << '\n';
  }
  return out.str();
}

SplitResult split_heldout(std::vector<ManifestRow> rows) {
  std::string not_accepted;
  std::string unrouted;
  for (const auto& row : rows) {
    if (row.status != RowStatus::Accepted) not_accepted += (not_accepted.empty() ? "" : ", ") + row.id;
    if (!row.synth_system) unrouted += (unrouted.empty() ? "" : ", ") + row.id;
  }
  if (!not_accepted.empty()) throw DataError("split needs accepted rows; not accepted: " + not_accepted);
  if (!unrouted.empty()) throw DataError("split needs routed rows; no synth_system: " + unrouted);

  SplitResult out;
  out.counts = count_synth_systems(rows);
  for (auto& row : rows) {
    (*row.synth_system == SynthSystem::Cartesia ? out.heldout : out.train).push_back(std::move(row));
  }
  if (out.heldout.empty()) out.warnings.push_back("no cartesia rows: held-out set is empty");
  if (out.train.empty()) out.warnings.push_back("every row is cartesia: training set is empty");
  return out;
}

// Keeps the balance sample independent of the routing draw for the same seed.
constexpr std::uint64_t kBalanceSalt = 0x5EEDBA1A9CE5EEDULL;

std::vector<ManifestRow> class_balance(const std::vector<ManifestRow>& rows,
                                       std::size_t per_class_target, std::uint64_t seed) {
  if (per_class_target == 0) throw ConfigError("per-class target must be positive");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < rows.size(); ++i) by_class[rows[i].corpus_class].push_back(i);
  std::vector<bool> keep(rows.size(), false);
  for (auto& [cls, indices] : by_class) {
    std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
      const auto ha = route_hash(seed ^ kBalanceSalt, rows[a].id);
      const auto hb = route_hash(seed ^ kBalanceSalt, rows[b].id);
      return ha != hb ? ha < hb : a < b;
    });
    for (std::size_t k = 0; k < indices.size() && k < per_class_target; ++k) keep[indices[k]] = true;
  }
  std::vector<ManifestRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (keep[i]) out.push_back(rows[i]);
  }
  return out;
}

}  // namespace entityscore
