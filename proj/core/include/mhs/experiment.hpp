#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mhs/catalog.hpp"
#include "mhs/corpus.hpp"
#include "mhs/embedding.hpp"
#include "mhs/metrics.hpp"
#include "mhs/trainer.hpp"

namespace mhs {

struct NamedDataset {
  std::string name;
  Dataset data;
};

struct NamedCatalog {
  std::string name;
  SymptomCatalog catalog;
};

struct Protocol {
  TrainConfig train;
  std::size_t folds = 5;
  std::vector<std::uint64_t> seeds = {1};
  std::uint64_t fold_seed = 0;
};

struct SwapCell {
  std::string task;
  std::string catalog;
  CrossValidation result;
};

/// tasks x catalogs grid: every task is cross-validated with every catalog's
/// heads. Cells are row-major (task, then catalog).
struct SwapGrid {
  std::vector<std::string> tasks;
  std::vector<std::string> catalogs;
  std::vector<SwapCell> cells;

  const SwapCell& at(std::size_t task, std::size_t catalog) const { return cells[task * catalogs.size() + catalog]; }
};

SwapGrid run_symptom_swap(std::span<const NamedDataset> tasks, std::span<const NamedCatalog> catalogs,
                          const EmbeddingProvider& provider, const Protocol& protocol);

struct TransferCell {
  std::string name;
  const Dataset* test = nullptr;
  /// Catalog to train and evaluate with; null means the training catalog.
  const SymptomCatalog* catalog = nullptr;
};

struct TransferResult {
  std::string name;
  std::string catalog;
  EvalReport report;
};

/// Trains once per distinct catalog (on the full training set, config.seed)
/// and evaluates every cell with the matching model.
std::vector<TransferResult> run_transfer(const Dataset& train_data, const SymptomCatalog& train_catalog,
                                         std::span<const TransferCell> cells, const EmbeddingProvider& provider,
                                         const TrainConfig& config);

/// Summary plus per-run reports of one cross-validation.
std::string crossval_json(const CrossValidation& cv);
std::string swap_grid_json(const SwapGrid& grid);
std::string transfer_json(std::span<const TransferResult> results);

/// Runs a declarative experiment file and returns the result JSON (with a
/// provenance record). Paths in the spec are relative to the spec's directory.
/// Every corpus, catalog and embedding store is resolved before training.
std::string run_experiment_file(const std::string& spec_path);

}  // namespace mhs
