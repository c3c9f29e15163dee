#include "mhs/evaluator.hpp"

#include <limits>

#include "mhs/error.hpp"
#include "mhs/parallel.hpp"

namespace mhs {

SymptomInputs embed_symptoms(const SymptomCatalog& catalog, Variant variant, const EmbeddingProvider& provider,
                             const Tokenizer& tokenizer) {
  if (variant == Variant::CnnOnly) return {};
  SymptomInputs per_head(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto sentences = catalog.heads[i].sentences();
    for (std::size_t j = 0; j < sentences.size(); ++j) {
      const auto key = sentence_key(catalog, i, j);
      const auto tokens = tokenizer.tokenize(sentences[j]);
      per_head[i].push_back(provider.embed(TextRef{key, tokens}));
    }
  }
  return apply_variant_layout(std::move(per_head), variant);
}

EmbeddedSequence embed_example(const Example& example, const EmbeddingProvider& provider, std::size_t max_tokens) {
  std::span<const std::string> tokens = example.tokens;
  if (tokens.size() > max_tokens) tokens = tokens.first(max_tokens);
  return fit_length(provider.embed(TextRef{example.id, tokens}), kMinSequenceLength, max_tokens);
}

void check_compatible(const MhsParams& params, const SymptomCatalog& catalog, const EmbeddingProvider& provider) {
  if (provider.dim() != params.config.dim) {
    throw Error(ErrorCode::DimensionMismatch, "model expects dim " + std::to_string(params.config.dim) +
                                                  ", embeddings have " + std::to_string(provider.dim()));
  }
  if (params.config.variant == Variant::CnnOnly) return;
  const auto heads = apply_variant(catalog, params.config.variant).size();
  if (heads != params.config.heads) {
    throw Error(ErrorCode::CatalogMismatch, "model has " + std::to_string(params.config.heads) +
                                                " heads, catalog provides " + std::to_string(heads));
  }
}

std::vector<Scored> score_dataset(const MhsParams& params, const Dataset& data, const SymptomInputs& symptoms,
                                  const EmbeddingProvider& provider) {
  const auto bank = encode_symptoms(params, symptoms);
  std::vector<Scored> out(data.size());
  parallel_for(data.size(), [&](std::size_t s) {
    const auto target = embed_example(data.examples[s], provider);
    const auto trace = forward(params, target, bank);
    out[s].predicted = predict_label(trace.logits);
    out[s].positive_probability = static_cast<double>(trace.probs[1]);
    out[s].distances.assign(trace.distances.begin(), trace.distances.end());
  });
  return out;
}

EvalReport report_from_scores(std::span<const Scored> scored, std::span<const Label> truths) {
  std::vector<int> predicted, truth;
  std::vector<double> scores;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    predicted.push_back(scored[i].predicted);
    scores.push_back(scored[i].positive_probability);
  }
  for (Label l : truths) truth.push_back(to_int(l));
  auto report = confusion_metrics(predicted, truth);
  const bool both = report.tp + report.fn > 0 && report.tn + report.fp > 0;
  report.auc = both ? roc_auc(scores, truth) : std::numeric_limits<double>::quiet_NaN();
  return report;
}

EvalReport evaluate(const MhsParams& params, const Dataset& data, const SymptomCatalog& catalog,
                    const EmbeddingProvider& provider) {
  check_compatible(params, catalog, provider);
  const auto symptoms = embed_symptoms(catalog, params.config.variant, provider);
  const auto scored = score_dataset(params, data, symptoms, provider);
  return report_from_scores(scored, data.labels());
}

}  // namespace mhs
