#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mhs/catalog.hpp"
#include "mhs/corpus.hpp"
#include "mhs/embedding.hpp"
#include "mhs/evaluator.hpp"
#include "mhs/model.hpp"

namespace mhs {

/// Head ids of the catalog as the model sees it. ValidationError for cnn_only,
/// which has no heads; CatalogMismatch when the head count differs.
std::vector<std::string> model_head_ids(const MhsParams& params, const SymptomCatalog& catalog);

struct HeadDistanceProfile {
  std::string head_id;
  double mean_negative = 0.0;
  double mean_positive = 0.0;
};

/// Class-conditional mean of each head distance. Throws EmptyClass.
std::vector<HeadDistanceProfile> head_heatmap(std::span<const Scored> scored, std::span<const Label> truths,
                                              std::span<const std::string> head_ids);
std::vector<HeadDistanceProfile> head_heatmap(const MhsParams& params, const Dataset& data,
                                              const SymptomCatalog& catalog, const EmbeddingProvider& provider);

/// CSV with header head_id,mean_distance_negative,mean_distance_positive.
std::string heatmap_csv(std::span<const HeadDistanceProfile> rows);

/// Learned linear-layer weights per head, one row per head:
/// head_id,weight_negative,weight_positive.
std::string head_weights_csv(const MhsParams& params, const SymptomCatalog& catalog);

/// The ceil(p/100 * N)-th smallest value (at least the 1st). p in (0, 100].
double nearest_rank_percentile(std::span<const double> values, double percentile);

/// Share (in %) of reference values <= value.
double percentile_rank(std::span<const double> reference, double value);

struct HeadThreshold {
  std::string head_id;
  double threshold = 0.0;
  /// d_i over the true-positive reference samples, in sample order.
  std::vector<double> reference;
};

struct SalientThresholds {
  double percentile = 70.0;
  std::string definition = "nearest-rank";
  std::string reference_set = "true-positives";
  std::vector<HeadThreshold> heads;
};

/// Per head, the nearest-rank percentile of d_i over the true positives.
/// Throws NoTruePositives.
SalientThresholds compute_thresholds(std::span<const Scored> scored, std::span<const Label> truths,
                                     std::span<const std::string> head_ids, double percentile = 70.0);
SalientThresholds compute_thresholds(const MhsParams& params, const Dataset& data, const SymptomCatalog& catalog,
                                     const EmbeddingProvider& provider, double percentile = 70.0);

std::string serialize_thresholds(const SalientThresholds& thresholds);
SalientThresholds parse_thresholds(std::string_view json_text);

/// Number of heads with d_i >= threshold.
std::size_t salient_count(std::span<const double> distances, const SalientThresholds& thresholds);

struct CountBucket {
  std::size_t salient = 0;
  std::size_t frequency = 0;
  double mean_positive_probability = 0.0;
};

/// Buckets the true positives by salient count; only non-empty buckets, in
/// increasing count order.
std::vector<CountBucket> salient_count_distribution(std::span<const Scored> scored, std::span<const Label> truths,
                                                    const SalientThresholds& thresholds);
std::vector<CountBucket> salient_count_distribution(const MhsParams& params, const Dataset& data,
                                                    const SymptomCatalog& catalog, const EmbeddingProvider& provider,
                                                    const SalientThresholds& thresholds);

struct HeadExplanation {
  std::string head_id;
  double distance = 0.0;
  double threshold = 0.0;
  double percentile_rank = 0.0;
  bool salient = false;
};

struct Explanation {
  std::string text_id;
  int predicted = 0;
  double positive_probability = 0.0;
  std::vector<HeadExplanation> heads;
};

/// Throws CatalogMismatch when the thresholds do not cover the model's heads.
Explanation explain(const Scored& scored, std::string text_id, std::span<const std::string> head_ids,
                    const SalientThresholds& thresholds);
std::vector<Explanation> explain(const MhsParams& params, const Dataset& data, const SymptomCatalog& catalog,
                                 const EmbeddingProvider& provider, const SalientThresholds& thresholds);

std::string explanations_json(std::span<const Explanation> explanations);

}  // namespace mhs
