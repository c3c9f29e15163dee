#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mhs/catalog.hpp"
#include "mhs/corpus.hpp"
#include "mhs/embedding.hpp"
#include "mhs/metrics.hpp"
#include "mhs/model.hpp"
#include "mhs/text.hpp"

namespace mhs {

/// Embeds every sentence of the original catalog under its store key, then
/// lays the result out for the variant. Empty for cnn_only.
SymptomInputs embed_symptoms(const SymptomCatalog& catalog, Variant variant, const EmbeddingProvider& provider,
                             const Tokenizer& tokenizer = {});

/// Embedding of one example, truncated to max_tokens rows.
EmbeddedSequence embed_example(const Example& example, const EmbeddingProvider& provider,
                               std::size_t max_tokens = kMaxTokens);

/// Throws CatalogMismatch when the catalog's variant head count differs from
/// the model, DimensionMismatch when the provider width differs.
void check_compatible(const MhsParams& params, const SymptomCatalog& catalog, const EmbeddingProvider& provider);

struct Scored {
  int predicted = 0;
  double positive_probability = 0.0;
  /// Head distances d_i (empty for cnn_only).
  std::vector<double> distances;
};

/// Forward pass over every example; symptoms are encoded once.
std::vector<Scored> score_dataset(const MhsParams& params, const Dataset& data, const SymptomInputs& symptoms,
                                  const EmbeddingProvider& provider);

/// Report from scores; auc is NaN when the data holds a single class.
EvalReport report_from_scores(std::span<const Scored> scored, std::span<const Label> truths);

EvalReport evaluate(const MhsParams& params, const Dataset& data, const SymptomCatalog& catalog,
                    const EmbeddingProvider& provider);

}  // namespace mhs
