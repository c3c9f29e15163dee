#include "mhs/catalog.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mhs/error.hpp"
#include "mhs/hashing.hpp"

namespace mhs {

using nlohmann::json;

namespace {

json to_json(const SymptomCatalog& catalog) {
  json heads = json::array();
  for (const auto& h : catalog.heads) {
    heads.push_back({{"id", h.id}, {"criterion", h.criterion}, {"questions", h.questions}});
  }
  return {{"disorder", catalog.disorder}, {"heads", std::move(heads)}};
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::ParseError, where + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<std::string> SymptomHead::sentences() const {
  std::vector<std::string> out;
  out.reserve(sentence_count());
  out.push_back(criterion);
  out.insert(out.end(), questions.begin(), questions.end());
  return out;
}

std::size_t SymptomCatalog::total_sentences() const {
  return std::accumulate(heads.begin(), heads.end(), std::size_t{0},
                         [](std::size_t acc, const SymptomHead& h) { return acc + h.sentence_count(); });
}

void validate_catalog(const SymptomCatalog& catalog) {
  if (catalog.heads.empty()) {
    throw Error(ErrorCode::ValidationError, "catalog '" + catalog.disorder + "' has no heads");
  }
  std::set<std::string> seen;
  for (const auto& h : catalog.heads) {
    if (h.id.empty()) throw Error(ErrorCode::ValidationError, "head with empty id");
    if (!seen.insert(h.id).second) {
      throw Error(ErrorCode::ValidationError, "duplicate head id '" + h.id + "'");
    }
    if (h.criterion.empty()) {
      throw Error(ErrorCode::ValidationError, "head '" + h.id + "' has an empty criterion");
    }
  }
}

SymptomCatalog parse_catalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "catalog must be a JSON object");

  SymptomCatalog catalog;
  catalog.disorder = require_string(doc, "disorder", "catalog");
  auto heads = doc.find("heads");
  if (heads == doc.end() || !heads->is_array()) {
    throw Error(ErrorCode::ParseError, "catalog: missing array field 'heads'");
  }
  for (std::size_t i = 0; i < heads->size(); ++i) {
    const json& h = (*heads)[i];
    const std::string where = "heads[" + std::to_string(i) + "]";
    if (!h.is_object()) throw Error(ErrorCode::ParseError, where + " is not an object");
    SymptomHead head;
    head.id = require_string(h, "id", where);
    head.criterion = require_string(h, "criterion", where);
    if (auto q = h.find("questions"); q != h.end()) {
      if (!q->is_array()) throw Error(ErrorCode::ParseError, where + ".questions is not an array");
      for (const auto& s : *q) {
        if (!s.is_string()) throw Error(ErrorCode::ParseError, where + ".questions holds a non-string");
        head.questions.push_back(s.get<std::string>());
      }
    }
    catalog.heads.push_back(std::move(head));
  }
  validate_catalog(catalog);
  return catalog;
}

SymptomCatalog load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open catalog '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

std::string serialize_catalog(const SymptomCatalog& catalog, int indent) {
  return to_json(catalog).dump(indent);
}

void save_catalog(const SymptomCatalog& catalog, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << serialize_catalog(catalog) << '\n';
}

std::string catalog_fingerprint(const SymptomCatalog& catalog) {
  return fingerprint(serialize_catalog(catalog, -1));
}

std::vector<std::string> head_sentences(const SymptomCatalog& catalog, std::size_t i) {
  if (i >= catalog.heads.size()) {
    throw Error(ErrorCode::IndexError, "head index " + std::to_string(i) + " out of range [0, " +
                                           std::to_string(catalog.heads.size()) + ")");
  }
  return catalog.heads[i].sentences();
}

SymptomCatalog restrict_to_first_sentence(const SymptomCatalog& catalog) {
  SymptomCatalog out = catalog;
  for (auto& h : out.heads) h.questions.clear();
  return out;
}

SymptomCatalog merge_to_single_head(const SymptomCatalog& catalog) {
  if (catalog.heads.size() == 1) return catalog;
  SymptomHead merged;
  merged.id = "ALL";
  for (const auto& h : catalog.heads) {
    for (auto& s : h.sentences()) {
      if (merged.criterion.empty()) {
        merged.criterion = std::move(s);
      } else {
        merged.questions.push_back(std::move(s));
      }
    }
  }
  return {catalog.disorder, {std::move(merged)}};
}

std::string sentence_key(const SymptomCatalog& catalog, std::size_t head, std::size_t sentence) {
  return catalog.disorder + "/" + catalog.heads.at(head).id + "/" + std::to_string(sentence);
}

}  // namespace mhs
