#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

#include "mhs/catalog.hpp"
#include "mhs/embedding.hpp"
#include "mhs/model.hpp"
#include "mhs/random.hpp"
#include "mhs/synthetic.hpp"
#include "mhs/trainer.hpp"

namespace mhs::testing {

inline std::string catalog_path(const std::string& name) {
  return std::string(MHS_CATALOG_DIR) + "/" + name + ".json";
}

inline SymptomCatalog shipped_catalog(const std::string& name) { return load_catalog(catalog_path(name)); }

inline std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("mhs-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline EmbeddedSequence random_sequence(std::size_t length, std::size_t dim, Rng& rng, std::string id = {}) {
  EmbeddedSequence seq(length, dim, std::move(id));
  for (auto& v : seq.values) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  return seq;
}

// Catalog with `heads` heads of `sentences` sentences each, e.g. "H1" with
// criterion "criterion one" and questions "question one a", ...
inline SymptomCatalog toy_catalog(std::size_t heads, std::size_t sentences, const std::string& disorder = "toy") {
  SymptomCatalog c;
  c.disorder = disorder;
  for (std::size_t i = 0; i < heads; ++i) {
    SymptomHead h;
    h.id = "H" + std::to_string(i);
    h.criterion = "criterion for head " + std::to_string(i) + " of " + disorder;
    for (std::size_t j = 1; j < sentences; ++j) {
      h.questions.push_back("question " + std::to_string(j) + " about head " + std::to_string(i));
    }
    c.heads.push_back(std::move(h));
  }
  return c;
}

template <typename T>
void randomize(Params<T>& params, std::uint64_t seed, double scale = 0.5) {
  Rng rng(seed, 77);
  for (auto& t : params.tensors()) {
    for (auto& v : t.values) v = static_cast<T>(rng.uniform(-scale, scale));
  }
}

// Desk-scale training setup used wherever a trained synthetic model is needed.
inline TrainConfig synthetic_train_config(std::uint64_t seed = 1) {
  TrainConfig c;
  c.c1 = 16;
  c.c2 = 16;
  c.epochs = 10;
  c.learning_rate = 1e-3;
  c.seed = seed;
  c.prior_bias_init = true;
  c.similarity_prior = 0.01;
  return c;
}

inline constexpr std::size_t kSyntheticDim = 64;

struct TrainedSynthetic {
  SymptomCatalog catalog;
  Dataset train;
  Dataset test;
  MhsParams params;
};

// MDD model trained on generate_synthetic(mdd, 200, 800, 0.7, 1); the test
// set is a fresh draw with seed 2. Built once per process.
inline const TrainedSynthetic& trained_mdd() {
  static const TrainedSynthetic model = [] {
    TrainedSynthetic t;
    t.catalog = shipped_catalog("mdd");
    t.train = prepare_dataset(generate_synthetic(t.catalog, 200, 800, 0.7, 1));
    t.test = prepare_dataset(generate_synthetic(t.catalog, 200, 800, 0.7, 2));
    const HashEncoder enc(kSyntheticDim);
    t.params = train(t.train, t.catalog, enc, synthetic_train_config()).params;
    return t;
  }();
  return model;
}

}  // namespace mhs::testing
