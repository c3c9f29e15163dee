#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mhs/catalog.hpp"
#include "mhs/embedding.hpp"

namespace mhs {

// Multi-Head Siamese network.
//
// Each text (target or symptom sentence) goes through the same three-channel
// extractor. Channel k (kernel 2, 3 or 5) is
//
//   conv(k) -> ReLU -> maxpool(2, stride 2) -> conv(k) -> ReLU -> global max
//
// over the token axis, giving a C2-dim feature vector. For every head i and
// sentence j the pair distance is the mean over channels of the cosine between
// target and sentence features; the head distance d_i is the mean over that
// head's sentences. The stacked distances D feed a linear layer o = W^T D + b
// and a softmax over {negative, positive}.
//
// The cnn_only ablation skips the comparison: the three target feature
// vectors are concatenated and fed to the linear layer directly.

enum class Variant { Full, SingleHead, OneDescription, CnnOnly };

std::string_view to_string(Variant v);
/// Accepts "full", "single-head", "one-desc", "cnn-only" (and underscore forms).
Variant parse_variant(std::string_view name);

inline constexpr std::size_t kChannelCount = 3;
inline constexpr std::array<std::size_t, kChannelCount> kKernelSizes = {2, 3, 5};
inline constexpr std::size_t kClasses = 2;
/// Feature norms below this make a cosine undefined; the pair distance is 0.
inline constexpr double kZeroNorm = 1e-12;

struct ModelConfig {
  std::size_t dim = kDefaultEmbeddingDim;
  std::size_t c1 = 100;
  std::size_t c2 = 100;
  std::size_t heads = 9;
  Variant variant = Variant::Full;

  /// Width of the final linear layer's input.
  std::size_t fc_inputs() const { return variant == Variant::CnnOnly ? kChannelCount * c2 : heads; }

  bool operator==(const ModelConfig&) const = default;
};

/// Weights are laid out [out][tap][in] so that one output position of a
/// valid convolution is a single contiguous dot product over k*in values.
template <typename T>
struct ChannelParams {
  std::size_t kernel = 0;
  std::size_t in_dim = 0;
  std::size_t c1 = 0;
  std::size_t c2 = 0;
  std::vector<T> conv1_weight;  // c1 x kernel x in_dim
  std::vector<T> conv1_bias;    // c1
  std::vector<T> conv2_weight;  // c2 x kernel x c1
  std::vector<T> conv2_bias;    // c2

  bool operator==(const ChannelParams&) const = default;
};

template <typename T>
struct NamedTensor {
  std::string name;
  std::vector<std::size_t> shape;
  std::span<T> values;
};

template <typename T>
struct Params {
  ModelConfig config;
  std::array<ChannelParams<T>, kChannelCount> channels;
  std::vector<T> fc_weight;  // fc_inputs x 2, row-major
  std::vector<T> fc_bias;    // 2

  /// Correctly shaped, all zero. Also the natural gradient accumulator.
  static Params zeros(const ModelConfig& config);

  /// 14 tensors in a fixed order: per channel conv1.weight, conv1.bias,
  /// conv2.weight, conv2.bias; then fc.weight, fc.bias.
  std::vector<NamedTensor<T>> tensors();
  std::vector<NamedTensor<const T>> tensors() const;

  std::size_t parameter_count() const;

  template <typename U>
  Params<U> cast() const;

  bool operator==(const Params&) const = default;
};

using MhsParams = Params<float>;
using MhsGrads = Params<float>;

/// Conv weights ~ U(-b, b), b = sqrt(6 / (fan_in + fan_out)), fan_in = k * in,
/// fan_out = out; conv biases and the linear layer start at zero.
MhsParams init_params(const ModelConfig& config, std::uint64_t seed);

/// Closed form: sum over k in {2,3,5} of (d*k*C1 + C1) + (C1*k*C2 + C2), plus
/// 2n + 2 for the linear layer (2*3*C2 + 2 for cnn_only).
std::size_t count_params(const ModelConfig& config);

/// The catalog the variant actually consumes: single_head merges all heads,
/// one_description keeps criteria only, full and cnn_only leave it unchanged.
SymptomCatalog apply_variant(const SymptomCatalog& catalog, Variant variant);

/// Same restructuring applied to anything laid out per head / per sentence
/// (e.g. symptom embeddings computed from the original catalog).
template <typename Item>
std::vector<std::vector<Item>> apply_variant_layout(std::vector<std::vector<Item>> per_head, Variant variant) {
  switch (variant) {
    case Variant::SingleHead: {
      std::vector<Item> merged;
      for (auto& head : per_head) {
        for (auto& item : head) merged.push_back(std::move(item));
      }
      std::vector<std::vector<Item>> out;
      out.push_back(std::move(merged));
      return out;
    }
    case Variant::OneDescription:
      for (auto& head : per_head) head.resize(std::min<std::size_t>(head.size(), 1));
      return per_head;
    case Variant::Full:
    case Variant::CnnOnly:
      return per_head;
  }
  return per_head;
}

/// Initial parameters for an ablation variant of the given catalog; the head
/// count comes from apply_variant(catalog, variant).
MhsParams build_variant(Variant variant, const SymptomCatalog& catalog, ModelConfig config, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Forward pass

template <typename T>
struct ChannelTrace {
  std::size_t conv1_len = 0;
  std::size_t pool_len = 0;
  std::size_t conv2_len = 0;
  std::vector<T> act1;                    // conv1_len x c1, post-ReLU
  std::vector<T> pooled;                  // pool_len x c1
  std::vector<std::uint32_t> pool_argmax;  // pool_len x c1, row index into act1
  std::vector<T> act2;                    // conv2_len x c2, post-ReLU
  std::vector<std::uint32_t> feature_argmax;  // c2, row index into act2
  std::vector<T> features;                // c2
};

/// One text through the shared extractor, with everything backward needs.
template <typename T>
struct BranchTrace {
  std::size_t length = 0;
  std::size_t dim = 0;
  std::vector<float> input;
  std::array<ChannelTrace<T>, kChannelCount> channels;
};

/// Feature vector of one channel. Throws ShapeError when the input width does
/// not match the channel or the sequence is too short for the kernel.
template <typename T>
std::vector<T> channel_features(const ChannelParams<T>& channel, const EmbeddedSequence& input);

template <typename T>
BranchTrace<T> encode_branch(const Params<T>& params, const EmbeddedSequence& input);

/// Per head, per sentence embeddings of the catalog the model was built for.
using SymptomInputs = std::vector<std::vector<EmbeddedSequence>>;

/// Encoded symptom sentences. Depends only on the parameters, so one bank is
/// shared by every sample of a batch.
template <typename T>
struct SymptomBank {
  std::vector<std::vector<BranchTrace<T>>> heads;
};

template <typename T>
SymptomBank<T> encode_symptoms(const Params<T>& params, const SymptomInputs& symptoms);

template <typename T>
struct ForwardTrace {
  BranchTrace<T> target;
  std::vector<std::vector<std::array<T, kChannelCount>>> channel_similarity;  // [i][j][k]
  std::vector<std::vector<T>> pair_distance;                                 // d_(i,j)
  std::vector<T> distances;                                                  // D, length n
  std::array<T, kClasses> logits{};
  std::array<T, kClasses> probs{};
};

struct ForwardOptions {
  /// Raise ZeroVector instead of treating a degenerate cosine as 0.
  bool strict = false;
};

template <typename T>
ForwardTrace<T> forward(const Params<T>& params, const EmbeddedSequence& target, const SymptomBank<T>& bank,
                        const ForwardOptions& options = {});

/// Cosine similarity; 0 when either norm is below kZeroNorm (ZeroVector if strict).
template <typename T>
T cosine_similarity(std::span<const T> x, std::span<const T> y, bool strict = false);

/// Numerically stable softmax over the two logits.
template <typename T>
std::array<T, kClasses> softmax(const std::array<T, kClasses>& logits);

/// Cross-entropy of softmax(logits) against the label, and its gradient with
/// respect to the logits (p - onehot).
template <typename T>
T softmax_cross_entropy(const std::array<T, kClasses>& logits, int label, std::array<T, kClasses>* grad_logits);

/// argmax of the logits; ties go to label 0.
template <typename T>
int predict_label(const std::array<T, kClasses>& logits) {
  return logits[1] > logits[0] ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Backward pass

struct BackwardOptions {
  /// Test hook: drops the -cos * x / |x|^2 term of the cosine gradient.
  bool corrupt_cosine_grad = false;
};

/// Gradients with respect to each encoded sentence's channel features,
/// shaped like the bank: [head][sentence][channel] -> c2 values.
template <typename T>
struct SymptomGrads {
  std::vector<std::vector<std::array<std::vector<T>, kChannelCount>>> features;

  static SymptomGrads zeros_like(const SymptomBank<T>& bank, std::size_t c2);
  void add(const SymptomGrads& other);
};

/// Accumulates into `grads` the gradient of dot(grad_logits, o) through the
/// linear layer and the target branch. Gradients reaching the sentence
/// features are accumulated into `symptom_grads` (if given) so a whole batch
/// can be pushed through the sentence branches once. Throws MissingTrace.
template <typename T>
void backward_target(const Params<T>& params, const SymptomBank<T>& bank, const ForwardTrace<T>& trace,
                     const std::array<T, kClasses>& grad_logits, Params<T>& grads,
                     SymptomGrads<T>* symptom_grads, std::vector<T>* input_grad = nullptr,
                     const BackwardOptions& options = {});

/// Pushes accumulated sentence-feature gradients through the shared extractor.
template <typename T>
void backward_symptoms(const Params<T>& params, const SymptomBank<T>& bank, const SymptomGrads<T>& symptom_grads,
                       Params<T>& grads);

/// Complete single-sample backward: target and symptom branches.
template <typename T>
Params<T> backward(const Params<T>& params, const SymptomBank<T>& bank, const ForwardTrace<T>& trace,
                   const std::array<T, kClasses>& grad_logits, const BackwardOptions& options = {});

}  // namespace mhs
