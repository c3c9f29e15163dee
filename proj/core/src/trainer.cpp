#include "mhs/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mhs/error.hpp"
#include "mhs/evaluator.hpp"
#include "mhs/parallel.hpp"
#include "mhs/random.hpp"

namespace mhs {

void TrainConfig::validate() const {
  if (batch_size < 1) throw Error(ErrorCode::ValidationError, "batch_size must be >= 1");
  if (epochs < 1) throw Error(ErrorCode::ValidationError, "epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::ValidationError, "learning_rate must be finite and positive");
  }
  if (max_tokens < kMinSequenceLength) throw Error(ErrorCode::ValidationError, "max_tokens too small");
  if (c1 < 1 || c2 < 1) throw Error(ErrorCode::ValidationError, "channel widths must be >= 1");
  if (!(similarity_prior >= 0.0) || !std::isfinite(similarity_prior)) {
    throw Error(ErrorCode::ValidationError, "similarity_prior must be finite and >= 0");
  }
}

template <typename T>
LossAndGrad<T> loss_and_grad(const Params<T>& params, std::span<const EmbeddedSequence> targets,
                             std::span<const Label> labels, const SymptomInputs& symptoms,
                             const BackwardOptions& options) {
  if (targets.empty()) throw Error(ErrorCode::ValidationError, "empty batch");
  if (targets.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "targets and labels differ in length");

  const auto bank = encode_symptoms(params, symptoms);
  const std::size_t n = targets.size();
  std::vector<double> losses(n);
  std::vector<Params<T>> sample_grads(n);
  std::vector<SymptomGrads<T>> sample_symptom_grads(n);

  parallel_for(n, [&](std::size_t s) {
    const auto trace = forward(params, targets[s], bank);
    std::array<T, kClasses> grad_logits{};
    losses[s] = static_cast<double>(softmax_cross_entropy(trace.logits, to_int(labels[s]), &grad_logits));
    sample_grads[s] = Params<T>::zeros(params.config);
    sample_symptom_grads[s] = SymptomGrads<T>::zeros_like(bank, params.config.c2);
    backward_target(params, bank, trace, grad_logits, sample_grads[s], &sample_symptom_grads[s], static_cast<std::vector<T>*>(nullptr), options);
  });

  LossAndGrad<T> out;
  out.grads = std::move(sample_grads[0]);
  auto symptom_grads = std::move(sample_symptom_grads[0]);
  auto total = out.grads.tensors();
  for (std::size_t s = 1; s < n; ++s) {
    const auto part = std::as_const(sample_grads[s]).tensors();
    for (std::size_t t = 0; t < total.size(); ++t) {
      for (std::size_t e = 0; e < total[t].values.size(); ++e) total[t].values[e] += part[t].values[e];
    }
    symptom_grads.add(sample_symptom_grads[s]);
  }
  backward_symptoms(params, bank, symptom_grads, out.grads);

  const T scale = T(1) / static_cast<T>(n);
  for (auto& t : out.grads.tensors()) {
    for (auto& v : t.values) v *= scale;
  }
  double sum = 0.0;
  for (double l : losses) sum += l;
  out.loss = sum / static_cast<double>(n);
  return out;
}

template LossAndGrad<float> loss_and_grad(const Params<float>&, std::span<const EmbeddedSequence>,
                                          std::span<const Label>, const SymptomInputs&, const BackwardOptions&);
template LossAndGrad<double> loss_and_grad(const Params<double>&, std::span<const EmbeddedSequence>,
                                           std::span<const Label>, const SymptomInputs&, const BackwardOptions&);

TrainState init_training(const SymptomCatalog& catalog, std::size_t dim, const TrainConfig& config,
                         std::span<const Label> labels) {
  config.validate();
  ModelConfig model;
  model.dim = dim;
  model.c1 = config.c1;
  model.c2 = config.c2;
  TrainState state;
  state.params = build_variant(config.variant, catalog, model, config.seed);
  state.optimizer = AdamState<float>::init(state.params);
  if (config.similarity_prior > 0.0 && config.variant != Variant::CnnOnly) {
    for (std::size_t i = 0; i < state.params.config.heads; ++i) {
      state.params.fc_weight[i * kClasses + 0] = static_cast<float>(-config.similarity_prior);
      state.params.fc_weight[i * kClasses + 1] = static_cast<float>(config.similarity_prior);
    }
  }
  if (config.prior_bias_init && !labels.empty()) {
    const auto pos = static_cast<double>(std::count(labels.begin(), labels.end(), Label::Positive));
    const auto neg = static_cast<double>(labels.size()) - pos;
    if (pos > 0 && neg > 0) {
      const double n = static_cast<double>(labels.size());
      state.params.fc_bias[0] = static_cast<float>(std::log(neg / n));
      state.params.fc_bias[1] = static_cast<float>(std::log(pos / n));
    }
  }
  return state;
}

TrainState continue_training(TrainState state, const Dataset& data, const SymptomCatalog& catalog,
                             const EmbeddingProvider& provider, const TrainConfig& config) {
  config.validate();
  if (data.size() == 0) throw Error(ErrorCode::InsufficientData, "no training examples");
  check_compatible(state.params, catalog, provider);
  const auto symptoms = embed_symptoms(catalog, config.variant, provider);

  std::vector<std::size_t> order(data.size());
  std::vector<EmbeddedSequence> targets;
  std::vector<Label> labels;
  for (std::size_t epoch = state.epochs_done; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng rng(config.seed, epoch + 1);
    rng.shuffle(std::span(order));

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      targets.assign(end - start, EmbeddedSequence{});
      labels.clear();
      parallel_for(end - start, [&](std::size_t s) {
        targets[s] = embed_example(data.examples[order[start + s]], provider, config.max_tokens);
      });
      for (std::size_t s = start; s < end; ++s) labels.push_back(data.examples[order[s]].label);

      auto step = loss_and_grad(state.params, std::span<const EmbeddedSequence>(targets),
                                std::span<const Label>(labels), symptoms);
      loss_sum += step.loss * static_cast<double>(end - start);
      adam_step(state.params, step.grads, state.optimizer, config.learning_rate, config.adam);
    }
    state.epoch_loss.push_back(loss_sum / static_cast<double>(order.size()));
    state.epochs_done = epoch + 1;
  }
  return state;
}

TrainState train(const Dataset& data, const SymptomCatalog& catalog, const EmbeddingProvider& provider,
                 const TrainConfig& config) {
  const auto labels = data.labels();
  return continue_training(init_training(catalog, provider.dim(), config, labels), data, catalog, provider, config);
}

CrossValidation cross_validate(const Dataset& data, const SymptomCatalog& catalog, const EmbeddingProvider& provider,
                               const TrainConfig& config, std::size_t folds, std::span<const std::uint64_t> seeds,
                               std::uint64_t fold_seed) {
  if (seeds.empty()) throw Error(ErrorCode::ValidationError, "no seeds");
  const auto labels = data.labels();
  const auto partition = stratified_folds(labels, folds, fold_seed);

  CrossValidation cv;
  cv.learning_rate = config.learning_rate;
  for (std::uint64_t seed : seeds) {
    TrainConfig run_config = config;
    run_config.seed = seed;
    for (std::size_t f = 0; f < partition.size(); ++f) {
      const auto train_split = subset(data, partition[f].train);
      const auto test_split = subset(data, partition[f].test);
      auto state = train(train_split, catalog, provider, run_config);
      RunRecord record;
      record.seed = seed;
      record.fold = f;
      record.report = evaluate(state.params, test_split, catalog, provider);
      record.test_indices = partition[f].test;
      record.epoch_loss = std::move(state.epoch_loss);
      cv.runs.push_back(std::move(record));
    }
  }

  const double n = static_cast<double>(cv.runs.size());
  std::size_t auc_runs = 0;
  for (const auto& r : cv.runs) {
    cv.mean_f1 += r.report.f1;
    cv.mean_accuracy += r.report.accuracy;
    cv.mean_weighted_f1 += r.report.weighted_f1;
    if (!std::isnan(r.report.auc)) {
      cv.mean_auc += r.report.auc;
      ++auc_runs;
    }
  }
  cv.mean_f1 /= n;
  cv.mean_accuracy /= n;
  cv.mean_weighted_f1 /= n;
  cv.mean_auc = auc_runs ? cv.mean_auc / static_cast<double>(auc_runs) : std::nan("");
  if (cv.runs.size() > 1) {
    double ss = 0.0;
    for (const auto& r : cv.runs) ss += (r.report.f1 - cv.mean_f1) * (r.report.f1 - cv.mean_f1);
    cv.std_f1 = std::sqrt(ss / (n - 1.0));
  }
  return cv;
}

LearningRateSweep sweep_learning_rates(const Dataset& data, const SymptomCatalog& catalog,
                                       const EmbeddingProvider& provider, const TrainConfig& config,
                                       std::span<const double> grid, std::size_t folds,
                                       std::span<const std::uint64_t> seeds, std::uint64_t fold_seed) {
  if (grid.empty()) throw Error(ErrorCode::ValidationError, "empty learning-rate grid");
  LearningRateSweep sweep;
  for (double lr : grid) {
    TrainConfig c = config;
    c.learning_rate = lr;
    sweep.results.push_back(cross_validate(data, catalog, provider, c, folds, seeds, fold_seed));
    if (sweep.results.back().mean_f1 > sweep.results[sweep.best].mean_f1) sweep.best = sweep.results.size() - 1;
  }
  return sweep;
}

}  // namespace mhs
