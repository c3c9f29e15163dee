#include "mhs/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "mhs/corpus.hpp"
#include "mhs/random.hpp"
#include "mhs/trainer.hpp"

namespace mhs {

namespace {

EmbeddedSequence random_sequence(Rng& rng, std::size_t dim) {
  EmbeddedSequence seq(kMinSequenceLength + rng.below(5), dim);
  for (auto& v : seq.values) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  return seq;
}

double batch_loss(const Params<double>& params, const std::vector<EmbeddedSequence>& targets,
                  const std::vector<Label>& labels, const SymptomInputs& symptoms) {
  const auto bank = encode_symptoms(params, symptoms);
  double sum = 0.0;
  for (std::size_t s = 0; s < targets.size(); ++s) {
    const auto trace = forward(params, targets[s], bank);
    sum += softmax_cross_entropy(trace.logits, to_int(labels[s]), static_cast<std::array<double, kClasses>*>(nullptr));
  }
  return sum / static_cast<double>(targets.size());
}

}  // namespace

GradcheckReport gradcheck(const GradcheckOptions& options) {
  Rng rng(options.seed, 0x67c4);
  ModelConfig config;
  config.dim = options.dim;
  config.c1 = options.c1;
  config.c2 = options.c2;
  config.heads = options.heads;
  config.variant = options.variant;

  // The trained-from-zero linear layer would block every conv gradient, so
  // all tensors get random values here.
  auto params = init_params(config, options.seed).cast<double>();
  for (auto& ch : params.channels) {
    for (auto& b : ch.conv1_bias) b = rng.uniform(-0.1, 0.1);
    for (auto& b : ch.conv2_bias) b = rng.uniform(-0.1, 0.1);
  }
  for (auto& w : params.fc_weight) w = rng.uniform(-1.0, 1.0);
  for (auto& b : params.fc_bias) b = rng.uniform(-0.5, 0.5);

  SymptomInputs symptoms;
  if (options.variant != Variant::CnnOnly) {
    symptoms.resize(options.heads);
    for (auto& head : symptoms) {
      const std::size_t m = 1 + rng.below(std::max<std::size_t>(options.max_sentences, 1));
      for (std::size_t j = 0; j < m; ++j) head.push_back(random_sequence(rng, options.dim));
    }
  }
  std::vector<EmbeddedSequence> targets;
  std::vector<Label> labels;
  for (std::size_t s = 0; s < options.batch; ++s) {
    targets.push_back(random_sequence(rng, options.dim));
    labels.push_back(s % 2 == 0 ? Label::Negative : Label::Positive);
  }

  BackwardOptions backward_options;
  backward_options.corrupt_cosine_grad = options.corrupt_cosine_grad;
  const auto analytic = loss_and_grad(params, std::span<const EmbeddedSequence>(targets),
                                      std::span<const Label>(labels), symptoms, backward_options);

  GradcheckReport report;
  auto tensors = params.tensors();
  const auto grads = analytic.grads.tensors();
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    TensorCheck check;
    check.name = tensors[t].name;
    check.elements = tensors[t].values.size();
    for (std::size_t e = 0; e < tensors[t].values.size(); ++e) {
      double& x = tensors[t].values[e];
      const double saved = x;
      x = saved + options.epsilon;
      const double up = batch_loss(params, targets, labels, symptoms);
      x = saved - options.epsilon;
      const double down = batch_loss(params, targets, labels, symptoms);
      x = saved;
      const double numeric = (up - down) / (2.0 * options.epsilon);
      const double a = grads[t].values[e];
      const double rel = std::abs(a - numeric) / std::max({1e-6, std::abs(a), std::abs(numeric)});
      check.max_relative_error = std::max(check.max_relative_error, rel);
    }
    check.passed = check.max_relative_error < options.tolerance;
    report.passed = report.passed && check.passed;
    report.tensors.push_back(check);
  }
  return report;
}

}  // namespace mhs
