#include "mhs/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mhs/error.hpp"

namespace mhs {

using nlohmann::ordered_json;

namespace {

std::vector<Scored> score(const MhsParams& params, const Dataset& data, const SymptomCatalog& catalog,
                          const EmbeddingProvider& provider) {
  check_compatible(params, catalog, provider);
  return score_dataset(params, data, embed_symptoms(catalog, params.config.variant, provider), provider);
}

void check_lengths(std::size_t scored, std::size_t truths) {
  if (scored != truths) throw Error(ErrorCode::LengthMismatch, "scores and labels differ in length");
}

}  // namespace

std::vector<std::string> model_head_ids(const MhsParams& params, const SymptomCatalog& catalog) {
  if (params.config.variant == Variant::CnnOnly) {
    throw Error(ErrorCode::ValidationError, "cnn-only models have no symptom heads");
  }
  const auto view = apply_variant(catalog, params.config.variant);
  if (view.size() != params.config.heads) {
    throw Error(ErrorCode::CatalogMismatch, "model has " + std::to_string(params.config.heads) +
                                                " heads, catalog provides " + std::to_string(view.size()));
  }
  std::vector<std::string> ids;
  for (const auto& h : view.heads) ids.push_back(h.id);
  return ids;
}

std::vector<HeadDistanceProfile> head_heatmap(std::span<const Scored> scored, std::span<const Label> truths,
                                              std::span<const std::string> head_ids) {
  check_lengths(scored.size(), truths.size());
  std::vector<double> sum_neg(head_ids.size(), 0.0), sum_pos(head_ids.size(), 0.0);
  std::size_t n_neg = 0, n_pos = 0;
  for (std::size_t s = 0; s < scored.size(); ++s) {
    if (scored[s].distances.size() != head_ids.size()) {
      throw Error(ErrorCode::CatalogMismatch, "distance vector does not match head count");
    }
    auto& sums = truths[s] == Label::Positive ? sum_pos : sum_neg;
    (truths[s] == Label::Positive ? n_pos : n_neg)++;
    for (std::size_t i = 0; i < head_ids.size(); ++i) sums[i] += scored[s].distances[i];
  }
  if (n_neg == 0 || n_pos == 0) throw Error(ErrorCode::EmptyClass, "heatmap needs samples of both classes");
  std::vector<HeadDistanceProfile> rows;
  for (std::size_t i = 0; i < head_ids.size(); ++i) {
    rows.push_back({head_ids[i], sum_neg[i] / static_cast<double>(n_neg), sum_pos[i] / static_cast<double>(n_pos)});
  }
  return rows;
}

std::vector<HeadDistanceProfile> head_heatmap(const MhsParams& params, const Dataset& data,
                                              const SymptomCatalog& catalog, const EmbeddingProvider& provider) {
  const auto ids = model_head_ids(params, catalog);
  const auto scored = score(params, data, catalog, provider);
  return head_heatmap(scored, data.labels(), ids);
}

std::string heatmap_csv(std::span<const HeadDistanceProfile> rows) {
  std::ostringstream out;
  out.precision(17);
  out << "head_id,mean_distance_negative,mean_distance_positive\n";
  for (const auto& r : rows) out << r.head_id << ',' << r.mean_negative << ',' << r.mean_positive << '\n';
  return out.str();
}

std::string head_weights_csv(const MhsParams& params, const SymptomCatalog& catalog) {
  const auto ids = model_head_ids(params, catalog);
  std::ostringstream out;
  out.precision(9);
  out << "head_id,weight_negative,weight_positive\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << ids[i] << ',' << params.fc_weight[i * kClasses] << ',' << params.fc_weight[i * kClasses + 1] << '\n';
  }
  return out.str();
}

double nearest_rank_percentile(std::span<const double> values, double percentile) {
  if (values.empty()) throw Error(ErrorCode::ValidationError, "percentile of an empty set");
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw Error(ErrorCode::ValidationError, "percentile must be in (0, 100]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile * n / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

double percentile_rank(std::span<const double> reference, double value) {
  if (reference.empty()) throw Error(ErrorCode::ValidationError, "empty reference distribution");
  const auto below = std::count_if(reference.begin(), reference.end(), [&](double r) { return r <= value; });
  return 100.0 * static_cast<double>(below) / static_cast<double>(reference.size());
}

SalientThresholds compute_thresholds(std::span<const Scored> scored, std::span<const Label> truths,
                                     std::span<const std::string> head_ids, double percentile) {
  check_lengths(scored.size(), truths.size());
  SalientThresholds out;
  out.percentile = percentile;
  for (const auto& id : head_ids) out.heads.push_back({id, 0.0, {}});
  for (std::size_t s = 0; s < scored.size(); ++s) {
    if (truths[s] != Label::Positive || scored[s].predicted != 1) continue;
    if (scored[s].distances.size() != head_ids.size()) {
      throw Error(ErrorCode::CatalogMismatch, "distance vector does not match head count");
    }
    for (std::size_t i = 0; i < head_ids.size(); ++i) out.heads[i].reference.push_back(scored[s].distances[i]);
  }
  if (out.heads.empty() || out.heads[0].reference.empty()) {
    throw Error(ErrorCode::NoTruePositives, "no true positives to set thresholds from");
  }
  for (auto& h : out.heads) h.threshold = nearest_rank_percentile(h.reference, percentile);
  return out;
}

SalientThresholds compute_thresholds(const MhsParams& params, const Dataset& data, const SymptomCatalog& catalog,
                                     const EmbeddingProvider& provider, double percentile) {
  const auto ids = model_head_ids(params, catalog);
  const auto scored = score(params, data, catalog, provider);
  return compute_thresholds(scored, data.labels(), ids, percentile);
}

std::string serialize_thresholds(const SalientThresholds& t) {
  ordered_json heads = ordered_json::array();
  for (const auto& h : t.heads) {
    heads.push_back({{"id", h.head_id}, {"threshold", h.threshold}, {"reference", h.reference}});
  }
  ordered_json j;
  j["percentile"] = t.percentile;
  j["definition"] = t.definition;
  j["reference_set"] = t.reference_set;
  j["heads"] = std::move(heads);
  return j.dump(2) + "\n";
}

SalientThresholds parse_thresholds(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    SalientThresholds t;
    t.percentile = j.at("percentile").get<double>();
    t.definition = j.value("definition", t.definition);
    t.reference_set = j.value("reference_set", t.reference_set);
    for (const auto& h : j.at("heads")) {
      t.heads.push_back({h.at("id").get<std::string>(), h.at("threshold").get<double>(),
                         h.at("reference").get<std::vector<double>>()});
    }
    return t;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("thresholds: ") + ex.what());
  }
}

std::size_t salient_count(std::span<const double> distances, const SalientThresholds& thresholds) {
  if (distances.size() != thresholds.heads.size()) {
    throw Error(ErrorCode::CatalogMismatch, "thresholds do not match head count");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < distances.size(); ++i) n += distances[i] >= thresholds.heads[i].threshold ? 1 : 0;
  return n;
}

std::vector<CountBucket> salient_count_distribution(std::span<const Scored> scored, std::span<const Label> truths,
                                                    const SalientThresholds& thresholds) {
  check_lengths(scored.size(), truths.size());
  std::map<std::size_t, std::pair<std::size_t, double>> buckets;
  for (std::size_t s = 0; s < scored.size(); ++s) {
    if (truths[s] != Label::Positive || scored[s].predicted != 1) continue;
    auto& b = buckets[salient_count(scored[s].distances, thresholds)];
    b.first += 1;
    b.second += scored[s].positive_probability;
  }
  std::vector<CountBucket> out;
  for (const auto& [count, b] : buckets) out.push_back({count, b.first, b.second / static_cast<double>(b.first)});
  return out;
}

std::vector<CountBucket> salient_count_distribution(const MhsParams& params, const Dataset& data,
                                                    const SymptomCatalog& catalog, const EmbeddingProvider& provider,
                                                    const SalientThresholds& thresholds) {
  model_head_ids(params, catalog);
  const auto scored = score(params, data, catalog, provider);
  return salient_count_distribution(scored, data.labels(), thresholds);
}

Explanation explain(const Scored& scored, std::string text_id, std::span<const std::string> head_ids,
                    const SalientThresholds& thresholds) {
  if (thresholds.heads.size() != head_ids.size() || scored.distances.size() != head_ids.size()) {
    throw Error(ErrorCode::CatalogMismatch, "thresholds do not match the model's heads");
  }
  Explanation e;
  e.text_id = std::move(text_id);
  e.predicted = scored.predicted;
  e.positive_probability = scored.positive_probability;
  for (std::size_t i = 0; i < head_ids.size(); ++i) {
    const auto& t = thresholds.heads[i];
    if (t.head_id != head_ids[i]) {
      throw Error(ErrorCode::CatalogMismatch, "threshold head '" + t.head_id + "' vs model head '" + head_ids[i] + "'");
    }
    const double d = scored.distances[i];
    e.heads.push_back({head_ids[i], d, t.threshold, percentile_rank(t.reference, d), d >= t.threshold});
  }
  return e;
}

std::vector<Explanation> explain(const MhsParams& params, const Dataset& data, const SymptomCatalog& catalog,
                                 const EmbeddingProvider& provider, const SalientThresholds& thresholds) {
  const auto ids = model_head_ids(params, catalog);
  if (thresholds.heads.size() != ids.size()) {
    throw Error(ErrorCode::CatalogMismatch, "thresholds do not match the model's heads");
  }
  const auto scored = score(params, data, catalog, provider);
  std::vector<Explanation> out;
  for (std::size_t s = 0; s < scored.size(); ++s) out.push_back(explain(scored[s], data.examples[s].id, ids, thresholds));
  return out;
}

std::string explanations_json(std::span<const Explanation> explanations) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : explanations) {
    ordered_json heads = ordered_json::array();
    for (const auto& h : e.heads) {
      heads.push_back({{"id", h.head_id},
                       {"distance", h.distance},
                       {"threshold", h.threshold},
                       {"percentile_rank", h.percentile_rank},
                       {"salient", h.salient}});
    }
    arr.push_back({{"id", e.text_id},
                   {"predicted_label", e.predicted},
                   {"positive_probability", e.positive_probability},
                   {"heads", std::move(heads)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace mhs
