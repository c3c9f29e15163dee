#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mhs/catalog.hpp"
#include "mhs/corpus.hpp"
#include "mhs/embedding.hpp"
#include "mhs/error.hpp"
#include "mhs/evaluator.hpp"
#include "mhs/experiment.hpp"
#include "mhs/gradcheck.hpp"
#include "mhs/hashing.hpp"
#include "mhs/interpreter.hpp"
#include "mhs/metrics.hpp"
#include "mhs/model.hpp"
#include "mhs/model_io.hpp"
#include "mhs/provenance.hpp"
#include "mhs/synthetic.hpp"
#include "mhs/trainer.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw mhs::Error(mhs::ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw mhs::Error(mhs::ErrorCode::IoError, "write failed: " + path);
}

// CSV, JSONL and fixed-field report artifacts cannot carry the record inline.
void write_sidecar(const std::string& path, const mhs::Provenance& prov) {
  if (path == "-") return;
  write_output(path + ".provenance.json", json::parse(prov.to_json()).dump(2) + "\n");
}

std::string with_provenance(ordered_json doc, const mhs::Provenance& prov) {
  doc["provenance"] = ordered_json::parse(prov.to_json());
  return doc.dump(2) + "\n";
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("invalid seed '" + item + "'");
    }
  }
  if (seeds.empty()) throw UsageError("--seeds needs at least one value");
  return seeds;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("invalid number '" + item + "'");
    }
  }
  return values;
}

mhs::Variant variant_flag(const std::string& name) {
  try {
    return mhs::parse_variant(name);
  } catch (const mhs::Error& e) {
    throw UsageError(e.what());
  }
}

mhs::Dataset load_dataset(const std::string& path, mhs::Provenance& prov) {
  auto corpus = mhs::load_corpus(path);
  prov.inputs["corpus"] = mhs::file_fingerprint(path);
  auto data = mhs::prepare_dataset(corpus);
  data.name = path;
  std::cerr << path << ": " << data.size() << " of " << corpus.posts.size() << " posts kept";
  for (const auto& [reason, n] : data.rejected) std::cerr << ", " << n << " " << reason;
  std::cerr << "\n";
  return data;
}

struct EncoderFlags {
  std::string embeddings;
  bool hash = false;
  std::size_t dim = mhs::kDefaultEmbeddingDim;
  std::uint64_t hash_seed = 0;

  void add(CLI::App* sub) {
    sub->add_option("--embeddings", embeddings, "EMB1 store covering corpus posts and catalog sentences")
        ->check(CLI::ExistingFile);
    sub->add_flag("--hash-encoder", hash, "Use the deterministic hash encoder");
    sub->add_option("--dim", dim, "Hash encoder width")->capture_default_str();
    sub->add_option("--hash-seed", hash_seed, "Hash encoder seed")->capture_default_str();
  }

  bool given() const { return hash || !embeddings.empty(); }

  std::unique_ptr<mhs::EmbeddingProvider> make(mhs::EncoderSpec& spec, mhs::Provenance& prov,
                                               std::size_t expected_dim = 0) const {
    if (hash && !embeddings.empty()) throw UsageError("--hash-encoder and --embeddings are exclusive");
    if (hash) {
      spec = {mhs::EncoderSpec::Kind::Hash, dim, hash_seed, {}};
      if (expected_dim != 0 && dim != expected_dim) {
        throw mhs::Error(mhs::ErrorCode::DimensionMismatch,
                         "model expects dim " + std::to_string(expected_dim) + ", --dim is " + std::to_string(dim));
      }
      return std::make_unique<mhs::HashEncoder>(dim, hash_seed);
    }
    if (embeddings.empty()) throw UsageError("one of --embeddings or --hash-encoder is required");
    auto store = mhs::EmbeddingStore::open(embeddings);
    spec = {mhs::EncoderSpec::Kind::Store, store->dim(), 0, store->fingerprint()};
    prov.inputs["embeddings"] = store->fingerprint();
    return std::make_unique<mhs::StoreProvider>(std::move(store), expected_dim);
  }

  // Falls back to the encoder recorded in the model.
  std::unique_ptr<mhs::EmbeddingProvider> for_model(const mhs::ModelBundle& bundle, mhs::Provenance& prov) const {
    mhs::EncoderSpec spec;
    if (given()) return make(spec, prov, bundle.params.config.dim);
    if (bundle.encoder.kind == mhs::EncoderSpec::Kind::Hash) {
      return std::make_unique<mhs::HashEncoder>(bundle.encoder.dim, bundle.encoder.seed);
    }
    throw UsageError("model does not record a hash encoder; pass --embeddings or --hash-encoder");
  }

  json describe() const {
    if (hash) return {{"kind", "hash"}, {"dim", dim}, {"seed", hash_seed}};
    return {{"kind", "emb1"}, {"path", embeddings}};
  }
};

struct TrainFlags {
  std::string catalog;
  std::string corpus;
  std::string variant = "full";
  std::size_t epochs = 5;
  double lr = 1e-5;
  std::size_t batch_size = 8;
  std::uint64_t seed = 0;
  std::size_t c1 = 100;
  std::size_t c2 = 100;
  std::size_t max_tokens = mhs::kMaxTokens;
  bool prior_bias = false;
  double similarity_prior = 0.0;
  EncoderFlags encoder;

  void add(CLI::App* sub) {
    sub->add_option("--catalog", catalog, "Symptom catalog JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--corpus", corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
    encoder.add(sub);
    sub->add_option("--variant", variant, "full | single-head | one-desc | cnn-only")->capture_default_str();
    sub->add_option("--epochs", epochs)->capture_default_str();
    sub->add_option("--lr", lr, "Adam learning rate")->capture_default_str();
    sub->add_option("--batch-size", batch_size)->capture_default_str();
    sub->add_option("--seed", seed)->capture_default_str();
    sub->add_option("--c1", c1, "First conv layer width")->capture_default_str();
    sub->add_option("--c2", c2, "Second conv layer width")->capture_default_str();
    sub->add_option("--max-tokens", max_tokens)->capture_default_str();
    sub->add_flag("--prior-bias", prior_bias, "Start the output bias at the log label frequencies");
    sub->add_option("--similarity-prior", similarity_prior, "Initial per-head weight favouring the positive class")
        ->capture_default_str();
  }

  mhs::TrainConfig config() const {
    mhs::TrainConfig c;
    c.epochs = epochs;
    c.learning_rate = lr;
    c.batch_size = batch_size;
    c.seed = seed;
    c.c1 = c1;
    c.c2 = c2;
    c.max_tokens = max_tokens;
    c.prior_bias_init = prior_bias;
    c.similarity_prior = similarity_prior;
    c.variant = variant_flag(variant);
    try {
      c.validate();
    } catch (const mhs::Error& e) {
      throw UsageError(e.what());
    }
    return c;
  }

  json describe() const {
    return {{"catalog", catalog},   {"corpus", corpus}, {"variant", variant},       {"epochs", epochs},
            {"lr", lr},             {"batch_size", batch_size}, {"seed", seed},    {"c1", c1},
            {"c2", c2},             {"max_tokens", max_tokens},
            {"prior_bias", prior_bias}, {"similarity_prior", similarity_prior}, {"encoder", encoder.describe()}};
  }
};

struct ModelFlags {
  std::string model;
  std::string catalog;
  EncoderFlags encoder;

  void add(CLI::App* sub) {
    sub->add_option("--model", model, "MHSM1 model file")->required()->check(CLI::ExistingFile);
    sub->add_option("--catalog", catalog, "Catalog override (must match the model's)")->check(CLI::ExistingFile);
    encoder.add(sub);
  }

  mhs::ModelBundle load(mhs::Provenance& prov) const {
    std::optional<mhs::SymptomCatalog> expected;
    if (!catalog.empty()) expected = mhs::load_catalog(catalog);
    auto bundle = mhs::load_model_bundle(model, expected ? &*expected : nullptr);
    if (bundle.catalog.heads.empty()) {
      if (!expected) throw UsageError("model carries no catalog; pass --catalog");
      bundle.catalog = *expected;
    }
    prov.inputs["model"] = mhs::file_fingerprint(model);
    return bundle;
  }

  json describe() const { return {{"model", model}, {"catalog", catalog}, {"encoder", encoder.describe()}}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-head siamese symptom matching for mental-illness detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mhs::tool_version()));

  std::function<void()> run;

  // gen-synth
  auto* gen = app.add_subcommand("gen-synth", "Generate a synthetic labeled corpus");
  struct {
    std::string catalog, out;
    std::size_t n_pos = 200, n_neg = 800;
    double overlap = 0.7;
    std::uint64_t seed = 1;
  } g;
  gen->add_option("--catalog", g.catalog)->required()->check(CLI::ExistingFile);
  gen->add_option("--n-pos", g.n_pos)->capture_default_str();
  gen->add_option("--n-neg", g.n_neg)->capture_default_str();
  gen->add_option("--overlap", g.overlap)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", g.seed)->capture_default_str();
  gen->add_option("--out", g.out, "Output JSONL ('-' for stdout)")->required();
  gen->callback([&] {
    run = [&] {
      const auto catalog = mhs::load_catalog(g.catalog);
      auto corpus = mhs::generate_synthetic(catalog, g.n_pos, g.n_neg, g.overlap, g.seed);
      mhs::Provenance prov{"gen-synth",
                           json{{"catalog", g.catalog},
                                {"n_pos", g.n_pos},
                                {"n_neg", g.n_neg},
                                {"overlap", g.overlap},
                                {"seed", g.seed}}
                               .dump(),
                           {{"catalog", mhs::file_fingerprint(g.catalog)}}};
      write_output(g.out, mhs::serialize_corpus_jsonl(corpus));
      write_sidecar(g.out, prov);
    };
  });

  // train
  auto* train = app.add_subcommand("train", "Train a model");
  TrainFlags tf;
  std::string train_out, resume;
  tf.add(train);
  train->add_option("--out", train_out, "Output model (MHSM1)")->required();
  train->add_option("--resume", resume, "Continue from a checkpoint written by train")->check(CLI::ExistingFile);
  train->callback([&] {
    run = [&] {
      const auto config = tf.config();
      mhs::Provenance prov{"train", tf.describe().dump(), {}};
      const auto catalog = mhs::load_catalog(tf.catalog);
      prov.inputs["catalog"] = mhs::file_fingerprint(tf.catalog);
      const auto data = load_dataset(tf.corpus, prov);
      mhs::EncoderSpec spec;
      const auto provider = tf.encoder.make(spec, prov);

      mhs::TrainState state;
      if (!resume.empty()) {
        auto bundle = mhs::load_model_bundle(resume, &catalog);
        if (!bundle.optimizer) throw mhs::Error(mhs::ErrorCode::CorruptRecord, "checkpoint has no optimizer state");
        if (bundle.params.config.variant != config.variant || bundle.params.config.c1 != config.c1 ||
            bundle.params.config.c2 != config.c2) {
          throw UsageError("checkpoint was trained with a different model configuration");
        }
        state = {std::move(bundle.params), std::move(*bundle.optimizer), bundle.epochs_done, {}};
      } else {
        state = mhs::init_training(catalog, provider->dim(), config, data.labels());
      }
      state = mhs::continue_training(std::move(state), data, catalog, *provider, config);
      for (std::size_t e = 0; e < state.epoch_loss.size(); ++e) {
        std::cerr << "epoch " << (state.epochs_done - state.epoch_loss.size() + e + 1) << " loss "
                  << state.epoch_loss[e] << "\n";
      }
      mhs::ModelBundle bundle;
      bundle.params = std::move(state.params);
      bundle.catalog = catalog;
      bundle.encoder = spec;
      bundle.optimizer = std::move(state.optimizer);
      bundle.epochs_done = state.epochs_done;
      bundle.provenance_json = prov.to_json();
      mhs::save_model(bundle, train_out);
    };
  });

  // crossval
  auto* cv = app.add_subcommand("crossval", "Stratified k-fold cross-validation over several seeds");
  TrainFlags cf;
  std::size_t folds = 5;
  std::string seeds_text = "1,2,3,4,5,6", lr_grid, report_path;
  std::uint64_t fold_seed = 0;
  cf.add(cv);
  cv->add_option("--folds", folds)->capture_default_str();
  cv->add_option("--seeds", seeds_text, "Comma-separated training seeds")->capture_default_str();
  cv->add_option("--fold-seed", fold_seed, "Seed of the fold partition")->capture_default_str();
  cv->add_option("--lr-grid", lr_grid, "Comma-separated learning rates to sweep (e.g. 1e-5,2e-5,1e-6,2e-6)");
  cv->add_option("--report", report_path, "Output report JSON")->required();
  cv->callback([&] {
    run = [&] {
      const auto config = cf.config();
      const auto seeds = parse_seeds(seeds_text);
      auto described = cf.describe();
      described["folds"] = folds;
      described["seeds"] = seeds;
      described["fold_seed"] = fold_seed;
      described["lr_grid"] = lr_grid;
      mhs::Provenance prov{"crossval", described.dump(), {}};
      const auto catalog = mhs::load_catalog(cf.catalog);
      prov.inputs["catalog"] = mhs::file_fingerprint(cf.catalog);
      const auto data = load_dataset(cf.corpus, prov);
      mhs::EncoderSpec spec;
      const auto provider = cf.encoder.make(spec, prov);

      ordered_json doc;
      doc["folds"] = folds;
      doc["seeds"] = seeds;
      doc["fold_seed"] = fold_seed;
      if (lr_grid.empty()) {
        const auto result = mhs::cross_validate(data, catalog, *provider, config, folds, seeds, fold_seed);
        std::cerr << "mean F1 " << result.mean_f1 << " (std " << result.std_f1 << "), mean AUC " << result.mean_auc
                  << "\n";
        doc.update(ordered_json::parse(mhs::crossval_json(result)));
      } else {
        const auto grid = parse_doubles(lr_grid);
        const auto sweep = mhs::sweep_learning_rates(data, catalog, *provider, config, grid, folds, seeds, fold_seed);
        ordered_json results = ordered_json::array();
        for (const auto& r : sweep.results) results.push_back(ordered_json::parse(mhs::crossval_json(r)));
        doc["best_learning_rate"] = sweep.results[sweep.best].learning_rate;
        doc["best_mean_f1"] = sweep.results[sweep.best].mean_f1;
        doc["sweep"] = std::move(results);
        std::cerr << "best lr " << sweep.results[sweep.best].learning_rate << " mean F1 "
                  << sweep.results[sweep.best].mean_f1 << "\n";
      }
      write_output(report_path, with_provenance(std::move(doc), prov));
    };
  });

  // eval
  auto* ev = app.add_subcommand("eval", "Evaluate a model on a labeled corpus");
  ModelFlags ef;
  std::string eval_corpus, eval_out;
  bool weighted = false;
  ef.add(ev);
  ev->add_option("--corpus", eval_corpus)->required()->check(CLI::ExistingFile);
  ev->add_flag("--weighted-f1", weighted, "Also print the weighted F1 on stderr");
  ev->add_option("--out", eval_out, "Output report JSON")->required();
  ev->callback([&] {
    run = [&] {
      auto described = ef.describe();
      described["corpus"] = eval_corpus;
      mhs::Provenance prov{"eval", described.dump(), {}};
      const auto bundle = ef.load(prov);
      const auto data = load_dataset(eval_corpus, prov);
      const auto provider = ef.encoder.for_model(bundle, prov);
      const auto report = mhs::evaluate(bundle.params, data, bundle.catalog, *provider);
      std::cerr << "F1 " << report.f1 << " accuracy " << report.accuracy << " AUC " << report.auc;
      if (weighted) std::cerr << " weighted F1 " << report.weighted_f1;
      std::cerr << "\n";
      write_output(eval_out, mhs::report_json(report));
      write_sidecar(eval_out, prov);
    };
  });

  // experiment
  auto* ex = app.add_subcommand("experiment", "Run a symptom-swap or transfer experiment spec");
  std::string spec_path, grid_out;
  ex->add_option("--spec", spec_path, "Experiment spec JSON")->required()->check(CLI::ExistingFile);
  ex->add_option("--out", grid_out, "Output JSON")->required();
  ex->callback([&] { run = [&] { write_output(grid_out, mhs::run_experiment_file(spec_path)); }; });

  // thresholds
  auto* th = app.add_subcommand("thresholds", "Per-head salient-symptom thresholds from true positives");
  ModelFlags tm;
  std::string th_corpus, th_out;
  double percentile = 70.0;
  tm.add(th);
  th->add_option("--corpus", th_corpus)->required()->check(CLI::ExistingFile);
  th->add_option("--percentile", percentile)->capture_default_str()->check(CLI::Range(0.0, 100.0));
  th->add_option("--out", th_out)->required();
  th->callback([&] {
    run = [&] {
      auto described = tm.describe();
      described["corpus"] = th_corpus;
      described["percentile"] = percentile;
      mhs::Provenance prov{"thresholds", described.dump(), {}};
      const auto bundle = tm.load(prov);
      const auto data = load_dataset(th_corpus, prov);
      const auto provider = tm.encoder.for_model(bundle, prov);
      const auto thresholds = mhs::compute_thresholds(bundle.params, data, bundle.catalog, *provider, percentile);
      auto doc = ordered_json::parse(mhs::serialize_thresholds(thresholds));
      doc["catalog_fingerprint"] = mhs::catalog_fingerprint(bundle.catalog);
      write_output(th_out, with_provenance(std::move(doc), prov));
    };
  });

  // explain
  auto* xp = app.add_subcommand("explain", "Per-head distances, percentile ranks and salient symptoms");
  ModelFlags xm;
  std::string xp_thresholds, xp_text, xp_corpus, xp_out;
  xm.add(xp);
  xp->add_option("--thresholds", xp_thresholds)->required()->check(CLI::ExistingFile);
  auto* text_opt = xp->add_option("--text", xp_text, "Explain a single text (hash encoder only)");
  auto* corpus_opt = xp->add_option("--corpus", xp_corpus)->check(CLI::ExistingFile);
  text_opt->excludes(corpus_opt);
  xp->add_option("--out", xp_out)->required();
  xp->callback([&] {
    run = [&] {
      if (xp_text.empty() && xp_corpus.empty()) throw UsageError("one of --text or --corpus is required");
      auto described = xm.describe();
      described["thresholds"] = xp_thresholds;
      described["text"] = xp_text;
      described["corpus"] = xp_corpus;
      mhs::Provenance prov{"explain", described.dump(), {}};
      const auto bundle = xm.load(prov);
      const auto provider = xm.encoder.for_model(bundle, prov);
      std::ifstream in(xp_thresholds, std::ios::binary);
      std::stringstream buf;
      buf << in.rdbuf();
      const auto thresholds = mhs::parse_thresholds(buf.str());
      prov.inputs["thresholds"] = mhs::file_fingerprint(xp_thresholds);

      mhs::Dataset data;
      if (!xp_text.empty()) {
        data.examples.push_back({"text", mhs::Tokenizer{}.tokenize(xp_text), mhs::Label::Negative});
      } else {
        data = load_dataset(xp_corpus, prov);
      }
      const auto explanations = mhs::explain(bundle.params, data, bundle.catalog, *provider, thresholds);
      ordered_json doc;
      doc["percentile"] = thresholds.percentile;
      doc["definition"] = thresholds.definition;
      doc["explanations"] = ordered_json::parse(mhs::explanations_json(explanations));
      write_output(xp_out, with_provenance(std::move(doc), prov));
    };
  });

  // heatmap
  auto* hm = app.add_subcommand("heatmap", "Class-conditional mean head distances as CSV");
  ModelFlags hf;
  std::string hm_corpus, hm_out, hm_weights;
  hf.add(hm);
  hm->add_option("--corpus", hm_corpus)->required()->check(CLI::ExistingFile);
  hm->add_option("--out", hm_out)->required();
  hm->add_option("--weights-out", hm_weights, "Also write the learned per-head linear weights as CSV");
  hm->callback([&] {
    run = [&] {
      auto described = hf.describe();
      described["corpus"] = hm_corpus;
      mhs::Provenance prov{"heatmap", described.dump(), {}};
      const auto bundle = hf.load(prov);
      const auto data = load_dataset(hm_corpus, prov);
      const auto provider = hf.encoder.for_model(bundle, prov);
      const auto rows = mhs::head_heatmap(bundle.params, data, bundle.catalog, *provider);
      write_output(hm_out, mhs::heatmap_csv(rows));
      write_sidecar(hm_out, prov);
      if (!hm_weights.empty()) {
        write_output(hm_weights, mhs::head_weights_csv(bundle.params, bundle.catalog));
        write_sidecar(hm_weights, prov);
      }
    };
  });

  // gradcheck
  auto* gc = app.add_subcommand("gradcheck", "Finite-difference check of the analytic gradients");
  mhs::GradcheckOptions go;
  std::string gc_variant = "full";
  gc->add_option("--seed", go.seed)->capture_default_str();
  gc->add_option("--dim", go.dim)->capture_default_str()->check(CLI::Range(1, 16));
  gc->add_option("--c1", go.c1)->capture_default_str()->check(CLI::Range(1, 8));
  gc->add_option("--c2", go.c2)->capture_default_str()->check(CLI::Range(1, 8));
  gc->add_option("--heads", go.heads)->capture_default_str()->check(CLI::Range(1, 3));
  gc->add_option("--sentences", go.max_sentences, "Most sentences per head")
      ->capture_default_str()
      ->check(CLI::Range(1, 3));
  gc->add_option("--variant", gc_variant)->capture_default_str();
  gc->add_flag("--corrupt-cosine-grad", go.corrupt_cosine_grad, "Fault injection: drop a cosine gradient term");
  int gc_status = 0;
  gc->callback([&] {
    run = [&] {
      go.variant = variant_flag(gc_variant);
      const auto report = mhs::gradcheck(go);
      std::printf("%-24s %8s %14s  %s\n", "tensor", "elements", "max_rel_err", "status");
      for (const auto& t : report.tensors) {
        std::printf("%-24s %8zu %14.3e  %s\n", t.name.c_str(), t.elements, t.max_relative_error,
                    t.passed ? "PASS" : "FAIL");
      }
      std::printf("%s\n", report.passed ? "gradcheck PASSED" : "gradcheck FAILED");
      gc_status = report.passed ? 0 : 1;
    };
  });

  // params
  auto* pa = app.add_subcommand("params", "Count trainable parameters");
  mhs::ModelConfig pc;
  std::string pa_variant = "full";
  pa->add_option("--dim", pc.dim)->capture_default_str();
  pa->add_option("--c1", pc.c1)->capture_default_str();
  pa->add_option("--c2", pc.c2)->capture_default_str();
  pa->add_option("--heads", pc.heads)->capture_default_str();
  pa->add_option("--variant", pa_variant)->capture_default_str();
  pa->callback([&] {
    run = [&] {
      pc.variant = variant_flag(pa_variant);
      std::cout << mhs::count_params(pc) << "\n";
    };
  });

  // catalog-validate
  auto* cvd = app.add_subcommand("catalog-validate", "Load and validate a catalog file");
  std::string catalog_path;
  cvd->add_option("catalog", catalog_path)->required()->check(CLI::ExistingFile);
  cvd->callback([&] {
    run = [&] {
      const auto catalog = mhs::load_catalog(catalog_path);
      std::cout << catalog.size() << " heads, OK\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    const auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  try {
    run();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) std::cerr << sub->help();
    return 2;
  } catch (const mhs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return gc_status;
}
