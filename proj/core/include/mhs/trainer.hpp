#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mhs/adam.hpp"
#include "mhs/catalog.hpp"
#include "mhs/corpus.hpp"
#include "mhs/embedding.hpp"
#include "mhs/metrics.hpp"
#include "mhs/model.hpp"
#include "mhs/text.hpp"

namespace mhs {

inline constexpr std::array<double, 4> kLearningRateGrid = {1e-5, 2e-5, 1e-6, 2e-6};

struct TrainConfig {
  std::size_t batch_size = 8;
  std::size_t epochs = 5;
  double learning_rate = 1e-5;
  AdamConfig adam;
  std::uint64_t seed = 0;
  Variant variant = Variant::Full;
  std::size_t max_tokens = kMaxTokens;
  std::size_t c1 = 100;
  std::size_t c2 = 100;
  /// Start the output bias at the log class frequencies of the training set
  /// instead of zero, so softmax(b) equals the label prior before step one.
  bool prior_bias_init = false;
  /// When > 0, every head starts with W = (-s, +s): higher similarity to a
  /// head initially favours the positive class. 0 keeps W at zero.
  double similarity_prior = 0.0;

  /// Throws ValidationError.
  void validate() const;
};

template <typename T>
struct LossAndGrad {
  double loss = 0.0;
  Params<T> grads;
};

/// Mean softmax cross-entropy over the batch and its gradient: per-sample
/// gradients are summed in sample order, then divided by the batch size.
template <typename T>
LossAndGrad<T> loss_and_grad(const Params<T>& params, std::span<const EmbeddedSequence> targets,
                             std::span<const Label> labels, const SymptomInputs& symptoms,
                             const BackwardOptions& options = {});

struct TrainState {
  MhsParams params;
  AdamState<float> optimizer;
  std::size_t epochs_done = 0;
  /// Mean per-sample loss of each completed epoch.
  std::vector<double> epoch_loss;
};

/// Fresh parameters (seeded by config.seed) for the catalog under config.variant.
/// With prior_bias_init the output bias is set from the label counts; a
/// positive similarity_prior sets every head row of W to (-s, +s).
TrainState init_training(const SymptomCatalog& catalog, std::size_t dim, const TrainConfig& config,
                         std::span<const Label> labels = {});

/// Runs epochs state.epochs_done .. config.epochs - 1. Each epoch shuffles
/// the examples with Rng(config.seed, epoch + 1) and walks them in batches;
/// the last partial batch is kept.
TrainState continue_training(TrainState state, const Dataset& data, const SymptomCatalog& catalog,
                             const EmbeddingProvider& provider, const TrainConfig& config);

TrainState train(const Dataset& data, const SymptomCatalog& catalog, const EmbeddingProvider& provider,
                 const TrainConfig& config);

struct RunRecord {
  std::uint64_t seed = 0;
  std::size_t fold = 0;
  EvalReport report;
  std::vector<std::size_t> test_indices;
  std::vector<double> epoch_loss;
};

struct CrossValidation {
  double learning_rate = 0.0;
  std::vector<RunRecord> runs;
  double mean_f1 = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single run.
  double std_f1 = 0.0;
  double mean_accuracy = 0.0;
  double mean_weighted_f1 = 0.0;
  /// Mean over runs whose test split holds both classes.
  double mean_auc = 0.0;
};

/// For every seed and fold: train on the fold's train split with that seed,
/// evaluate on its test split. The partition comes from fold_seed and is the
/// same for every training seed. Throws InsufficientData.
CrossValidation cross_validate(const Dataset& data, const SymptomCatalog& catalog, const EmbeddingProvider& provider,
                               const TrainConfig& config, std::size_t folds, std::span<const std::uint64_t> seeds,
                               std::uint64_t fold_seed = 0);

struct LearningRateSweep {
  std::vector<CrossValidation> results;
  /// Index of the highest mean F1 (first on ties).
  std::size_t best = 0;
};

LearningRateSweep sweep_learning_rates(const Dataset& data, const SymptomCatalog& catalog,
                                       const EmbeddingProvider& provider, const TrainConfig& config,
                                       std::span<const double> grid, std::size_t folds,
                                       std::span<const std::uint64_t> seeds, std::uint64_t fold_seed = 0);

}  // namespace mhs
