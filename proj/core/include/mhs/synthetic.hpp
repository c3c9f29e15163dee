#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mhs/catalog.hpp"
#include "mhs/corpus.hpp"

namespace mhs {

struct SyntheticOptions {
  std::size_t min_tokens = 24;
  std::size_t max_tokens = 64;
  std::size_t ngram_min = 2;
  std::size_t ngram_max = 5;
  /// Probability that a catalog token is swapped for a near-synonym.
  double synonym_rate = 0.1;
  std::size_t title_tokens = 4;
};

/// Deterministic labeled corpus for desk-scale experiments.
///
/// Negatives are pure filler text. A positive "expresses" a random non-empty
/// subset of the catalog's heads: round(overlap_rate * length) of its tokens
/// are contiguous n-grams cut from those heads' sentences, placed at random
/// positions between filler tokens. Filler words never occur in the catalog.
/// Post order is shuffled; ids are "synth-<seed>-<index>".
Corpus generate_synthetic(const SymptomCatalog& catalog, std::size_t n_pos, std::size_t n_neg,
                          double overlap_rate, std::uint64_t seed, const SyntheticOptions& options = {});

/// Built-in neutral vocabulary (before removal of catalog words).
std::span<const std::string_view> filler_vocabulary();

/// Lower-cased tokens of every catalog sentence, deduplicated and sorted.
std::vector<std::string> catalog_vocabulary(const SymptomCatalog& catalog, const Tokenizer& tokenizer = {});

}  // namespace mhs
