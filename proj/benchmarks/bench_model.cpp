#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "mhs/embedding.hpp"
#include "mhs/model.hpp"
#include "mhs/random.hpp"
#include "mhs/trainer.hpp"

namespace {

mhs::EmbeddedSequence random_sequence(std::size_t length, std::size_t dim, mhs::Rng& rng) {
  mhs::EmbeddedSequence seq(length, dim);
  for (auto& v : seq.values) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  return seq;
}

mhs::ModelConfig config(std::size_t dim, std::size_t width, std::size_t heads) {
  mhs::ModelConfig c;
  c.dim = dim;
  c.c1 = c.c2 = width;
  c.heads = heads;
  return c;
}

// Per head: a criterion and one question, each 24 tokens long.
mhs::SymptomInputs symptom_inputs(std::size_t heads, std::size_t dim, mhs::Rng& rng) {
  mhs::SymptomInputs s(heads);
  for (auto& h : s) {
    h.push_back(random_sequence(24, dim, rng));
    h.push_back(random_sequence(24, dim, rng));
  }
  return s;
}

void BM_ChannelFeatures(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto length = static_cast<std::size_t>(state.range(1));
  const auto p = mhs::init_params(config(dim, 100, 1), 1);
  mhs::Rng rng(2);
  const auto e = random_sequence(length, dim, rng);
  for (auto _ : state) {
    for (const auto& ch : p.channels) benchmark::DoNotOptimize(mhs::channel_features(ch, e));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(length));
}
BENCHMARK(BM_ChannelFeatures)->Args({64, 128})->Args({512, 128})->Args({512, 512});

void BM_Forward(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const std::size_t heads = 9;
  auto p = mhs::init_params(config(dim, 100, heads), 1);
  mhs::Rng rng(3);
  const auto bank = mhs::encode_symptoms(p, symptom_inputs(heads, dim, rng));
  const auto target = random_sequence(128, dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mhs::forward(p, target, bank));
}
BENCHMARK(BM_Forward)->Arg(64)->Arg(512);

void BM_LossAndGradBatch(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const std::size_t heads = 9;
  auto p = mhs::init_params(config(dim, 16, heads), 1);
  mhs::Rng rng(4);
  const auto symptoms = symptom_inputs(heads, dim, rng);
  std::vector<mhs::EmbeddedSequence> targets;
  std::vector<mhs::Label> labels;
  for (int i = 0; i < 8; ++i) {
    targets.push_back(random_sequence(64, dim, rng));
    labels.push_back(i % 4 == 0 ? mhs::Label::Positive : mhs::Label::Negative);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mhs::loss_and_grad(p, targets, labels, symptoms));
}
BENCHMARK(BM_LossAndGradBatch)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_HashEncoder(benchmark::State& state) {
  const mhs::HashEncoder enc(static_cast<std::size_t>(state.range(0)));
  std::vector<std::string> tokens;
  for (int i = 0; i < 100; ++i) tokens.push_back("token" + std::to_string(i));
  for (auto _ : state) benchmark::DoNotOptimize(enc.embed({"post", tokens}));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_HashEncoder)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
