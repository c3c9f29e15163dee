#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mhs {

/// One symptom head: a diagnostic criterion plus the questionnaire items
/// mapped onto it. Sentence 0 is always the criterion.
struct SymptomHead {
  std::string id;
  std::string criterion;
  std::vector<std::string> questions;

  std::vector<std::string> sentences() const;
  std::size_t sentence_count() const { return 1 + questions.size(); }

  bool operator==(const SymptomHead&) const = default;
};

/// The head set for one disorder. Head order defines the head index used by
/// the model's distance vector and final linear layer.
struct SymptomCatalog {
  std::string disorder;
  std::vector<SymptomHead> heads;

  std::size_t size() const { return heads.size(); }
  std::size_t total_sentences() const;

  bool operator==(const SymptomCatalog&) const = default;
};

/// Parses and validates a catalog document. Throws ParseError / ValidationError.
SymptomCatalog parse_catalog(std::string_view json_text);
SymptomCatalog load_catalog(const std::string& path);

std::string serialize_catalog(const SymptomCatalog& catalog, int indent = 2);
void save_catalog(const SymptomCatalog& catalog, const std::string& path);

/// Content hash of the canonical (compact) serialization.
std::string catalog_fingerprint(const SymptomCatalog& catalog);

/// Throws ValidationError on duplicate ids, empty criteria or zero heads.
void validate_catalog(const SymptomCatalog& catalog);

/// [criterion, q_1, ..., q_{m-1}] for head i. Throws IndexError.
std::vector<std::string> head_sentences(const SymptomCatalog& catalog, std::size_t i);

/// Every head keeps only its criterion sentence.
SymptomCatalog restrict_to_first_sentence(const SymptomCatalog& catalog);

/// Concatenates all heads' sentences, in head order, into one head.
SymptomCatalog merge_to_single_head(const SymptomCatalog& catalog);

/// Identifier of sentence j of head i as used in embedding stores:
/// "<disorder>/<head id>/<j>".
std::string sentence_key(const SymptomCatalog& catalog, std::size_t head, std::size_t sentence);

}  // namespace mhs
