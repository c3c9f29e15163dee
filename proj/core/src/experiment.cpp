#include "mhs/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <map>

#include "binary_io.hpp"
#include "json.hpp"
#include "mhs/error.hpp"
#include "mhs/evaluator.hpp"
#include "mhs/hashing.hpp"
#include "mhs/provenance.hpp"
#include "mhs/synthetic.hpp"

namespace mhs {

using nlohmann::json;
using nlohmann::ordered_json;

SwapGrid run_symptom_swap(std::span<const NamedDataset> tasks, std::span<const NamedCatalog> catalogs,
                          const EmbeddingProvider& provider, const Protocol& protocol) {
  SwapGrid grid;
  for (const auto& t : tasks) grid.tasks.push_back(t.name);
  for (const auto& c : catalogs) grid.catalogs.push_back(c.name);
  for (const auto& t : tasks) {
    for (const auto& c : catalogs) {
      grid.cells.push_back({t.name, c.name,
                            cross_validate(t.data, c.catalog, provider, protocol.train, protocol.folds,
                                           protocol.seeds, protocol.fold_seed)});
    }
  }
  return grid;
}

std::vector<TransferResult> run_transfer(const Dataset& train_data, const SymptomCatalog& train_catalog,
                                         std::span<const TransferCell> cells, const EmbeddingProvider& provider,
                                         const TrainConfig& config) {
  std::map<std::string, MhsParams> models;
  std::vector<TransferResult> out;
  for (const auto& cell : cells) {
    if (cell.test == nullptr) throw Error(ErrorCode::ValidationError, "transfer cell '" + cell.name + "' has no data");
    const SymptomCatalog& catalog = cell.catalog ? *cell.catalog : train_catalog;
    const auto key = catalog_fingerprint(catalog);
    auto it = models.find(key);
    if (it == models.end()) it = models.emplace(key, train(train_data, catalog, provider, config).params).first;
    out.push_back({cell.name, catalog.disorder, evaluate(it->second, *cell.test, catalog, provider)});
  }
  return out;
}

namespace {

ordered_json report_object(const EvalReport& r) { return ordered_json::parse(report_json(r)); }

ordered_json cv_object(const CrossValidation& cv) {
  ordered_json runs = ordered_json::array();
  for (const auto& r : cv.runs) {
    ordered_json run;
    run["seed"] = r.seed;
    run["fold"] = r.fold;
    run["report"] = report_object(r.report);
    run["epoch_loss"] = r.epoch_loss;
    runs.push_back(std::move(run));
  }
  ordered_json j;
  j["learning_rate"] = cv.learning_rate;
  j["mean_f1"] = cv.mean_f1;
  j["std_f1"] = cv.std_f1;
  j["mean_accuracy"] = cv.mean_accuracy;
  j["mean_weighted_f1"] = cv.mean_weighted_f1;
  j["mean_auc"] = std::isnan(cv.mean_auc) ? ordered_json(nullptr) : ordered_json(cv.mean_auc);
  j["runs"] = std::move(runs);
  return j;
}

ordered_json swap_object(const SwapGrid& grid) {
  ordered_json cells = ordered_json::array();
  for (const auto& c : grid.cells) {
    ordered_json cell;
    cell["task"] = c.task;
    cell["catalog"] = c.catalog;
    cell["f1"] = c.result.mean_f1;
    cell["auc"] = std::isnan(c.result.mean_auc) ? ordered_json(nullptr) : ordered_json(c.result.mean_auc);
    cell["crossval"] = cv_object(c.result);
    cells.push_back(std::move(cell));
  }
  ordered_json j;
  j["kind"] = "symptom_swap";
  j["tasks"] = grid.tasks;
  j["catalogs"] = grid.catalogs;
  j["cells"] = std::move(cells);
  return j;
}

ordered_json transfer_object(std::span<const TransferResult> results) {
  ordered_json cells = ordered_json::array();
  for (const auto& r : results) {
    ordered_json cell;
    cell["name"] = r.name;
    cell["catalog"] = r.catalog;
    cell["report"] = report_object(r.report);
    cells.push_back(std::move(cell));
  }
  ordered_json j;
  j["kind"] = "transfer";
  j["cells"] = std::move(cells);
  return j;
}

template <typename V>
V get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<V>();
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, where + ": field '" + key + "': " + ex.what());
  }
}

TrainConfig parse_train_config(const json& j) {
  TrainConfig c;
  if (j.is_null()) return c;
  c.batch_size = j.value("batch_size", c.batch_size);
  c.epochs = j.value("epochs", c.epochs);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.seed = j.value("seed", c.seed);
  c.max_tokens = j.value("max_tokens", c.max_tokens);
  c.c1 = j.value("c1", c.c1);
  c.c2 = j.value("c2", c.c2);
  c.prior_bias_init = j.value("prior_bias", c.prior_bias_init);
  c.similarity_prior = j.value("similarity_prior", c.similarity_prior);
  if (j.contains("variant")) c.variant = parse_variant(j["variant"].get<std::string>());
  c.validate();
  return c;
}

json train_config_json(const TrainConfig& c) {
  return {{"batch_size", c.batch_size}, {"epochs", c.epochs},     {"learning_rate", c.learning_rate},
          {"seed", c.seed},             {"max_tokens", c.max_tokens}, {"c1", c.c1},
          {"c2", c.c2},                 {"prior_bias", c.prior_bias_init},
          {"similarity_prior", c.similarity_prior},
          {"variant", to_string(c.variant)}};
}

// Resolves every resource of a spec before any training starts.
class SpecResolver {
 public:
  explicit SpecResolver(const std::string& spec_path) : base_(std::filesystem::path(spec_path).parent_path()) {}

  std::string path(const std::string& rel) const {
    std::filesystem::path p(rel);
    return (p.is_absolute() ? p : base_ / p).string();
  }

  std::map<std::string, SymptomCatalog> catalogs(const json& spec, std::vector<NamedCatalog>& ordered) {
    std::map<std::string, SymptomCatalog> by_name;
    for (const auto& c : spec.at("catalogs")) {
      const auto name = get<std::string>(c, "name", "catalog");
      const auto file = path(get<std::string>(c, "path", "catalog " + name));
      auto catalog = load_catalog(file);
      provenance.inputs["catalog:" + name] = file_fingerprint(file);
      if (!by_name.emplace(name, catalog).second) {
        throw Error(ErrorCode::ValidationError, "duplicate catalog name '" + name + "'");
      }
      ordered.push_back({name, std::move(catalog)});
    }
    return by_name;
  }

  Dataset dataset(const json& task, const std::map<std::string, SymptomCatalog>& catalogs) {
    const auto name = get<std::string>(task, "name", "task");
    Corpus corpus;
    if (task.contains("corpus")) {
      const auto file = path(task["corpus"].get<std::string>());
      corpus = load_corpus(file, name);
      provenance.inputs["corpus:" + name] = file_fingerprint(file);
    } else if (task.contains("synthetic")) {
      const auto& s = task["synthetic"];
      const auto catalog_name = get<std::string>(s, "catalog", "synthetic task " + name);
      const auto it = catalogs.find(catalog_name);
      if (it == catalogs.end()) throw Error(ErrorCode::ValidationError, "unknown catalog '" + catalog_name + "'");
      corpus = generate_synthetic(it->second, get<std::size_t>(s, "positives", name),
                                  get<std::size_t>(s, "negatives", name), get<double>(s, "overlap", name),
                                  s.value("seed", std::uint64_t{1}));
      corpus.task_name = name;
      provenance.inputs["corpus:" + name] = fingerprint(serialize_corpus_jsonl(corpus));
    } else {
      throw Error(ErrorCode::ParseError, "task '" + name + "' needs 'corpus' or 'synthetic'");
    }
    auto data = prepare_dataset(corpus);
    data.name = name;
    return data;
  }

  std::unique_ptr<EmbeddingProvider> encoder(const json& spec) {
    const auto& e = spec.at("encoder");
    const auto kind = get<std::string>(e, "kind", "encoder");
    if (kind == "hash") {
      return std::make_unique<HashEncoder>(e.value("dim", kDefaultEmbeddingDim), e.value("seed", std::uint64_t{0}));
    }
    if (kind == "emb1") {
      const auto file = path(get<std::string>(e, "path", "encoder"));
      auto store = EmbeddingStore::open(file);
      provenance.inputs["embeddings"] = store->fingerprint();
      return std::make_unique<StoreProvider>(std::move(store), e.value("dim", std::size_t{0}));
    }
    throw Error(ErrorCode::ParseError, "encoder kind must be 'hash' or 'emb1'");
  }

  Provenance provenance;

 private:
  std::filesystem::path base_;
};

}  // namespace

std::string crossval_json(const CrossValidation& cv) { return cv_object(cv).dump(); }

std::string swap_grid_json(const SwapGrid& grid) { return swap_object(grid).dump(2) + "\n"; }

std::string transfer_json(std::span<const TransferResult> results) {
  return transfer_object(results).dump(2) + "\n";
}

std::string run_experiment_file(const std::string& spec_path) {
  json spec;
  try {
    const auto bytes = detail::read_file(spec_path);
    spec = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& ex) {
    throw Error(ErrorCode::ParseError, spec_path + ": " + ex.what());
  }
  try {
    SpecResolver resolver(spec_path);
    resolver.provenance.command = "experiment";
    resolver.provenance.inputs["spec"] = file_fingerprint(spec_path);

    const auto kind = get<std::string>(spec, "kind", "experiment");
    if (kind != "symptom_swap" && kind != "transfer") {
      throw Error(ErrorCode::ParseError, "experiment kind must be 'symptom_swap' or 'transfer'");
    }
    const auto config = parse_train_config(spec.value("train", json()));
    std::vector<NamedCatalog> catalogs;
    const auto by_name = resolver.catalogs(spec, catalogs);
    const auto provider = resolver.encoder(spec);

    json resolved = {{"kind", kind}, {"train", train_config_json(config)}, {"encoder", provider->describe()}};
    ordered_json result;

    if (kind == "symptom_swap") {
      Protocol protocol;
      protocol.train = config;
      protocol.folds = spec.value("folds", protocol.folds);
      protocol.seeds = spec.value("seeds", protocol.seeds);
      protocol.fold_seed = spec.value("fold_seed", protocol.fold_seed);
      std::vector<NamedDataset> tasks;
      for (const auto& t : spec.at("tasks")) {
        auto data = resolver.dataset(t, by_name);
        tasks.push_back({data.name, std::move(data)});
      }
      resolved["folds"] = protocol.folds;
      resolved["seeds"] = protocol.seeds;
      resolved["fold_seed"] = protocol.fold_seed;
      result = swap_object(run_symptom_swap(tasks, catalogs, *provider, protocol));
    } else {
      const auto train_data = resolver.dataset(spec.at("train_task"), by_name);
      const auto train_catalog_name = get<std::string>(spec, "train_catalog", "transfer");
      const auto train_catalog = by_name.find(train_catalog_name);
      if (train_catalog == by_name.end()) {
        throw Error(ErrorCode::ValidationError, "unknown catalog '" + train_catalog_name + "'");
      }
      std::vector<Dataset> tests;
      std::vector<std::string> names;
      std::vector<const SymptomCatalog*> cell_catalogs;
      for (const auto& c : spec.at("cells")) {
        tests.push_back(resolver.dataset(c, by_name));
        names.push_back(tests.back().name);
        const SymptomCatalog* cat = nullptr;
        if (c.contains("catalog")) {
          const auto it = by_name.find(c["catalog"].get<std::string>());
          if (it == by_name.end()) throw Error(ErrorCode::ValidationError, "unknown catalog in cell " + names.back());
          cat = &it->second;
        }
        cell_catalogs.push_back(cat);
      }
      std::vector<TransferCell> cells;
      for (std::size_t i = 0; i < tests.size(); ++i) cells.push_back({names[i], &tests[i], cell_catalogs[i]});
      result = transfer_object(run_transfer(train_data, train_catalog->second, cells, *provider, config));
    }

    resolver.provenance.config_json = resolved.dump();
    result["provenance"] = ordered_json::parse(resolver.provenance.to_json());
    return result.dump(2) + "\n";
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ValidationError, spec_path + ": malformed experiment spec: " + ex.what());
  }
}

}  // namespace mhs
