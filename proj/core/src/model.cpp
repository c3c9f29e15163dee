#include "mhs/model.hpp"

#include <algorithm>
#include <cmath>

#include "mhs/error.hpp"
#include "mhs/parallel.hpp"
#include "mhs/random.hpp"

namespace mhs {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::SingleHead: return "single-head";
    case Variant::OneDescription: return "one-desc";
    case Variant::CnnOnly: return "cnn-only";
  }
  return "full";
}

Variant parse_variant(std::string_view name) {
  if (name == "full") return Variant::Full;
  if (name == "single-head" || name == "single_head") return Variant::SingleHead;
  if (name == "one-desc" || name == "one_description" || name == "one-description") return Variant::OneDescription;
  if (name == "cnn-only" || name == "cnn_only") return Variant::CnnOnly;
  throw Error(ErrorCode::ParseError, "unknown variant '" + std::string(name) + "'");
}

namespace {

// Eight independent partial sums let the compiler vectorize without
// reassociating; the summation order is fixed, so results are reproducible.
template <typename T, typename In>
T dot(const T* w, const In* x, std::size_t n) {
  T acc[8] = {};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t u = 0; u < 8; ++u) acc[u] += w[i + u] * static_cast<T>(x[i + u]);
  }
  for (std::size_t u = 0; i < n; ++i, ++u) acc[u] += w[i] * static_cast<T>(x[i]);
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

template <typename T, typename In>
void axpy(T a, const In* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * static_cast<T>(x[i]);
}

template <typename T>
ChannelParams<T> zero_channel(std::size_t kernel, const ModelConfig& c) {
  ChannelParams<T> ch;
  ch.kernel = kernel;
  ch.in_dim = c.dim;
  ch.c1 = c.c1;
  ch.c2 = c.c2;
  ch.conv1_weight.assign(c.c1 * kernel * c.dim, T(0));
  ch.conv1_bias.assign(c.c1, T(0));
  ch.conv2_weight.assign(c.c2 * kernel * c.c1, T(0));
  ch.conv2_bias.assign(c.c2, T(0));
  return ch;
}

void check_config(const ModelConfig& c) {
  if (c.dim == 0 || c.c1 == 0 || c.c2 == 0 || c.heads == 0) {
    throw Error(ErrorCode::ShapeError, "dim, c1, c2 and heads must all be >= 1");
  }
}

template <typename T>
void run_channel(const ChannelParams<T>& ch, const EmbeddedSequence& input, ChannelTrace<T>& tr) {
  const std::size_t k = ch.kernel;
  const std::size_t d = ch.in_dim;
  if (input.dim != d) {
    throw Error(ErrorCode::ShapeError,
                "embedding width " + std::to_string(input.dim) + " != model dim " + std::to_string(d));
  }
  if (input.values.size() != input.length * input.dim) {
    throw Error(ErrorCode::ShapeError, "embedding buffer does not match its shape");
  }
  if (input.length < k || (input.length - k + 1) / 2 < k) {
    throw Error(ErrorCode::ShapeError, "sequence of " + std::to_string(input.length) +
                                           " rows is too short for kernel " + std::to_string(k));
  }
  const std::size_t c1 = ch.c1;
  const std::size_t c2 = ch.c2;
  const float* x = input.values.data();

  tr.conv1_len = input.length - k + 1;
  tr.act1.resize(tr.conv1_len * c1);
  for (std::size_t t = 0; t < tr.conv1_len; ++t) {
    for (std::size_t c = 0; c < c1; ++c) {
      const T z = ch.conv1_bias[c] + dot(ch.conv1_weight.data() + c * k * d, x + t * d, k * d);
      tr.act1[t * c1 + c] = z > T(0) ? z : T(0);
    }
  }

  tr.pool_len = tr.conv1_len / 2;
  tr.pooled.resize(tr.pool_len * c1);
  tr.pool_argmax.resize(tr.pool_len * c1);
  for (std::size_t p = 0; p < tr.pool_len; ++p) {
    for (std::size_t c = 0; c < c1; ++c) {
      const T a = tr.act1[(2 * p) * c1 + c];
      const T b = tr.act1[(2 * p + 1) * c1 + c];
      const bool second = b > a;
      tr.pooled[p * c1 + c] = second ? b : a;
      tr.pool_argmax[p * c1 + c] = static_cast<std::uint32_t>(2 * p + (second ? 1 : 0));
    }
  }

  tr.conv2_len = tr.pool_len - k + 1;
  tr.act2.resize(tr.conv2_len * c2);
  for (std::size_t t = 0; t < tr.conv2_len; ++t) {
    for (std::size_t c = 0; c < c2; ++c) {
      const T z = ch.conv2_bias[c] + dot(ch.conv2_weight.data() + c * k * c1, tr.pooled.data() + t * c1, k * c1);
      tr.act2[t * c2 + c] = z > T(0) ? z : T(0);
    }
  }

  tr.features.assign(c2, T(0));
  tr.feature_argmax.assign(c2, 0);
  for (std::size_t c = 0; c < c2; ++c) {
    T best = tr.act2[c];
    std::uint32_t arg = 0;
    for (std::size_t t = 1; t < tr.conv2_len; ++t) {
      if (tr.act2[t * c2 + c] > best) {
        best = tr.act2[t * c2 + c];
        arg = static_cast<std::uint32_t>(t);
      }
    }
    tr.features[c] = best;
    tr.feature_argmax[c] = arg;
  }
}

template <typename T>
void backward_channel(const ChannelParams<T>& ch, const ChannelTrace<T>& tr, std::span<const float> input,
                      std::span<const T> feature_grad, ChannelParams<T>& grad, T* input_grad) {
  const std::size_t k = ch.kernel;
  const std::size_t d = ch.in_dim;
  const std::size_t c1 = ch.c1;
  const std::size_t c2 = ch.c2;

  std::vector<T> pooled_grad(tr.pool_len * c1, T(0));
  bool any = false;
  for (std::size_t c = 0; c < c2; ++c) {
    const T g = feature_grad[c];
    if (g == T(0)) continue;
    const std::size_t t = tr.feature_argmax[c];
    if (!(tr.act2[t * c2 + c] > T(0))) continue;
    any = true;
    grad.conv2_bias[c] += g;
    axpy(g, tr.pooled.data() + t * c1, grad.conv2_weight.data() + c * k * c1, k * c1);
    axpy(g, ch.conv2_weight.data() + c * k * c1, pooled_grad.data() + t * c1, k * c1);
  }
  if (!any) return;

  // Pool windows do not overlap, so each act1 cell receives from at most one
  // pooled cell.
  for (std::size_t p = 0; p < tr.pool_len; ++p) {
    for (std::size_t c = 0; c < c1; ++c) {
      const T g = pooled_grad[p * c1 + c];
      if (g == T(0)) continue;
      const std::size_t r = tr.pool_argmax[p * c1 + c];
      if (!(tr.act1[r * c1 + c] > T(0))) continue;
      grad.conv1_bias[c] += g;
      axpy(g, input.data() + r * d, grad.conv1_weight.data() + c * k * d, k * d);
      if (input_grad) axpy(g, ch.conv1_weight.data() + c * k * d, input_grad + r * d, k * d);
    }
  }
}

template <typename T>
void check_trace(const ModelConfig& config, const BranchTrace<T>& tr) {
  for (const auto& ch : tr.channels) {
    if (ch.features.size() != config.c2 || ch.feature_argmax.size() != config.c2) {
      throw Error(ErrorCode::MissingTrace, "forward intermediates are missing");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Params

template <typename T>
Params<T> Params<T>::zeros(const ModelConfig& config) {
  check_config(config);
  Params p;
  p.config = config;
  for (std::size_t k = 0; k < kChannelCount; ++k) p.channels[k] = zero_channel<T>(kKernelSizes[k], config);
  p.fc_weight.assign(config.fc_inputs() * kClasses, T(0));
  p.fc_bias.assign(kClasses, T(0));
  return p;
}

template <typename T>
std::vector<NamedTensor<T>> Params<T>::tensors() {
  std::vector<NamedTensor<T>> out;
  for (auto& ch : channels) {
    const std::string prefix = "k" + std::to_string(ch.kernel) + ".";
    out.push_back({prefix + "conv1.weight", {ch.c1, ch.kernel, ch.in_dim}, ch.conv1_weight});
    out.push_back({prefix + "conv1.bias", {ch.c1}, ch.conv1_bias});
    out.push_back({prefix + "conv2.weight", {ch.c2, ch.kernel, ch.c1}, ch.conv2_weight});
    out.push_back({prefix + "conv2.bias", {ch.c2}, ch.conv2_bias});
  }
  out.push_back({"fc.weight", {config.fc_inputs(), kClasses}, fc_weight});
  out.push_back({"fc.bias", {kClasses}, fc_bias});
  return out;
}

template <typename T>
std::vector<NamedTensor<const T>> Params<T>::tensors() const {
  auto mutable_view = const_cast<Params*>(this)->tensors();
  std::vector<NamedTensor<const T>> out;
  out.reserve(mutable_view.size());
  for (auto& t : mutable_view) out.push_back({std::move(t.name), std::move(t.shape), t.values});
  return out;
}

template <typename T>
std::size_t Params<T>::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors()) n += t.values.size();
  return n;
}

template <typename T>
template <typename U>
Params<U> Params<T>::cast() const {
  Params<U> out = Params<U>::zeros(config);
  auto src = tensors();
  auto dst = out.tensors();
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::transform(src[i].values.begin(), src[i].values.end(), dst[i].values.begin(),
                   [](T v) { return static_cast<U>(v); });
  }
  return out;
}

template struct Params<float>;
template struct Params<double>;
template Params<double> Params<float>::cast<double>() const;
template Params<float> Params<double>::cast<float>() const;
template Params<float> Params<float>::cast<float>() const;
template Params<double> Params<double>::cast<double>() const;

MhsParams init_params(const ModelConfig& config, std::uint64_t seed) {
  MhsParams p = MhsParams::zeros(config);
  std::uint64_t stream = 0;
  auto fill = [&](std::vector<float>& w, std::size_t fan_in, std::size_t fan_out) {
    Rng rng(seed, ++stream);
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (auto& v : w) v = static_cast<float>(rng.uniform(-bound, bound));
  };
  for (auto& ch : p.channels) {
    fill(ch.conv1_weight, ch.kernel * ch.in_dim, ch.c1);
    fill(ch.conv2_weight, ch.kernel * ch.c1, ch.c2);
  }
  return p;
}

std::size_t count_params(const ModelConfig& c) {
  std::size_t n = 0;
  for (std::size_t k : kKernelSizes) {
    n += (c.dim * k * c.c1 + c.c1) + (c.c1 * k * c.c2 + c.c2);
  }
  return n + c.fc_inputs() * kClasses + kClasses;
}

SymptomCatalog apply_variant(const SymptomCatalog& catalog, Variant variant) {
  switch (variant) {
    case Variant::SingleHead: return merge_to_single_head(catalog);
    case Variant::OneDescription: return restrict_to_first_sentence(catalog);
    case Variant::Full:
    case Variant::CnnOnly: return catalog;
  }
  return catalog;
}

MhsParams build_variant(Variant variant, const SymptomCatalog& catalog, ModelConfig config, std::uint64_t seed) {
  validate_catalog(catalog);
  config.variant = variant;
  config.heads = apply_variant(catalog, variant).size();
  return init_params(config, seed);
}

// ---------------------------------------------------------------------------
// Forward

template <typename T>
std::vector<T> channel_features(const ChannelParams<T>& channel, const EmbeddedSequence& input) {
  ChannelTrace<T> tr;
  run_channel(channel, input, tr);
  return std::move(tr.features);
}

template <typename T>
BranchTrace<T> encode_branch(const Params<T>& params, const EmbeddedSequence& input) {
  BranchTrace<T> tr;
  tr.length = input.length;
  tr.dim = input.dim;
  tr.input = input.values;
  for (std::size_t k = 0; k < kChannelCount; ++k) run_channel(params.channels[k], input, tr.channels[k]);
  return tr;
}

template <typename T>
SymptomBank<T> encode_symptoms(const Params<T>& params, const SymptomInputs& symptoms) {
  std::vector<std::pair<std::size_t, std::size_t>> flat;
  SymptomBank<T> bank;
  bank.heads.resize(symptoms.size());
  for (std::size_t i = 0; i < symptoms.size(); ++i) {
    bank.heads[i].resize(symptoms[i].size());
    for (std::size_t j = 0; j < symptoms[i].size(); ++j) flat.emplace_back(i, j);
  }
  parallel_for(flat.size(), [&](std::size_t n) {
    auto [i, j] = flat[n];
    bank.heads[i][j] = encode_branch(params, symptoms[i][j]);
  });
  return bank;
}

template <typename T>
T cosine_similarity(std::span<const T> x, std::span<const T> y, bool strict) {
  if (x.size() != y.size()) throw Error(ErrorCode::ShapeError, "cosine of vectors with different sizes");
  T xy = 0, xx = 0, yy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  const T nx = std::sqrt(xx);
  const T ny = std::sqrt(yy);
  if (nx < T(kZeroNorm) || ny < T(kZeroNorm)) {
    if (strict) throw Error(ErrorCode::ZeroVector, "cosine similarity of a zero feature vector");
    return T(0);
  }
  const T c = xy / (nx * ny);
  return std::clamp(c, T(-1), T(1));
}

template <typename T>
std::array<T, kClasses> softmax(const std::array<T, kClasses>& logits) {
  const T m = std::max(logits[0], logits[1]);
  const T e0 = std::exp(logits[0] - m);
  const T e1 = std::exp(logits[1] - m);
  const T z = e0 + e1;
  return {e0 / z, e1 / z};
}

template <typename T>
T softmax_cross_entropy(const std::array<T, kClasses>& logits, int label, std::array<T, kClasses>* grad_logits) {
  const T m = std::max(logits[0], logits[1]);
  const T lse = m + std::log(std::exp(logits[0] - m) + std::exp(logits[1] - m));
  if (grad_logits) {
    const auto p = softmax(logits);
    (*grad_logits)[0] = p[0] - (label == 0 ? T(1) : T(0));
    (*grad_logits)[1] = p[1] - (label == 1 ? T(1) : T(0));
  }
  return lse - logits[static_cast<std::size_t>(label)];
}

template <typename T>
ForwardTrace<T> forward(const Params<T>& params, const EmbeddedSequence& target, const SymptomBank<T>& bank,
                        const ForwardOptions& options) {
  const ModelConfig& cfg = params.config;
  ForwardTrace<T> tr;
  tr.target = encode_branch(params, target);

  std::vector<T> fc_in;
  if (cfg.variant == Variant::CnnOnly) {
    fc_in.reserve(cfg.fc_inputs());
    for (const auto& ch : tr.target.channels) fc_in.insert(fc_in.end(), ch.features.begin(), ch.features.end());
  } else {
    if (bank.heads.size() != cfg.heads) {
      throw Error(ErrorCode::ShapeError, "symptom bank has " + std::to_string(bank.heads.size()) +
                                             " heads, model expects " + std::to_string(cfg.heads));
    }
    tr.channel_similarity.resize(cfg.heads);
    tr.pair_distance.resize(cfg.heads);
    tr.distances.assign(cfg.heads, T(0));
    for (std::size_t i = 0; i < cfg.heads; ++i) {
      const auto& sentences = bank.heads[i];
      if (sentences.empty()) throw Error(ErrorCode::ShapeError, "head " + std::to_string(i) + " has no sentences");
      tr.channel_similarity[i].resize(sentences.size());
      tr.pair_distance[i].resize(sentences.size());
      T head_sum = 0;
      for (std::size_t j = 0; j < sentences.size(); ++j) {
        check_trace(cfg, sentences[j]);
        T pair_sum = 0;
        for (std::size_t k = 0; k < kChannelCount; ++k) {
          const T s = cosine_similarity<T>(tr.target.channels[k].features, sentences[j].channels[k].features,
                                           options.strict);
          tr.channel_similarity[i][j][k] = s;
          pair_sum += s;
        }
        tr.pair_distance[i][j] = pair_sum / T(kChannelCount);
        head_sum += tr.pair_distance[i][j];
      }
      tr.distances[i] = head_sum / static_cast<T>(sentences.size());
    }
    fc_in = tr.distances;
  }

  for (std::size_t c = 0; c < kClasses; ++c) {
    T o = params.fc_bias[c];
    for (std::size_t r = 0; r < fc_in.size(); ++r) o += params.fc_weight[r * kClasses + c] * fc_in[r];
    tr.logits[c] = o;
  }
  tr.probs = softmax(tr.logits);
  return tr;
}

// ---------------------------------------------------------------------------
// Backward

template <typename T>
SymptomGrads<T> SymptomGrads<T>::zeros_like(const SymptomBank<T>& bank, std::size_t c2) {
  SymptomGrads g;
  g.features.resize(bank.heads.size());
  for (std::size_t i = 0; i < bank.heads.size(); ++i) {
    g.features[i].resize(bank.heads[i].size());
    for (auto& per_channel : g.features[i]) {
      for (auto& v : per_channel) v.assign(c2, T(0));
    }
  }
  return g;
}

template <typename T>
void SymptomGrads<T>::add(const SymptomGrads& other) {
  for (std::size_t i = 0; i < features.size(); ++i) {
    for (std::size_t j = 0; j < features[i].size(); ++j) {
      for (std::size_t k = 0; k < kChannelCount; ++k) {
        auto& dst = features[i][j][k];
        const auto& src = other.features[i][j][k];
        for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += src[c];
      }
    }
  }
}

template <typename T>
void backward_target(const Params<T>& params, const SymptomBank<T>& bank, const ForwardTrace<T>& trace,
                     const std::array<T, kClasses>& grad_logits, Params<T>& grads, SymptomGrads<T>* symptom_grads,
                     std::vector<T>* input_grad, const BackwardOptions& options) {
  const ModelConfig& cfg = params.config;
  check_trace(cfg, trace.target);
  const bool siamese = cfg.variant != Variant::CnnOnly;
  if (siamese && (trace.distances.size() != cfg.heads || bank.heads.size() != cfg.heads)) {
    throw Error(ErrorCode::MissingTrace, "trace does not hold the head distances for this model");
  }

  std::vector<T> fc_in;
  if (siamese) {
    fc_in = trace.distances;
  } else {
    for (const auto& ch : trace.target.channels) fc_in.insert(fc_in.end(), ch.features.begin(), ch.features.end());
  }

  std::vector<T> fc_in_grad(fc_in.size(), T(0));
  for (std::size_t c = 0; c < kClasses; ++c) {
    grads.fc_bias[c] += grad_logits[c];
    for (std::size_t r = 0; r < fc_in.size(); ++r) {
      grads.fc_weight[r * kClasses + c] += fc_in[r] * grad_logits[c];
      fc_in_grad[r] += params.fc_weight[r * kClasses + c] * grad_logits[c];
    }
  }

  const std::size_t c2 = cfg.c2;
  std::array<std::vector<T>, kChannelCount> feature_grad;
  for (auto& g : feature_grad) g.assign(c2, T(0));

  if (!siamese) {
    for (std::size_t k = 0; k < kChannelCount; ++k) {
      std::copy_n(fc_in_grad.begin() + static_cast<std::ptrdiff_t>(k * c2), c2, feature_grad[k].begin());
    }
  } else {
    for (std::size_t i = 0; i < cfg.heads; ++i) {
      const auto& sentences = bank.heads[i];
      const T pair_grad = fc_in_grad[i] / static_cast<T>(sentences.size());
      const T cos_grad = pair_grad / T(kChannelCount);
      if (cos_grad == T(0)) continue;
      for (std::size_t j = 0; j < sentences.size(); ++j) {
        for (std::size_t k = 0; k < kChannelCount; ++k) {
          const auto& x = trace.target.channels[k].features;
          const auto& y = sentences[j].channels[k].features;
          T xy = 0, xx = 0, yy = 0;
          for (std::size_t c = 0; c < c2; ++c) {
            xy += x[c] * y[c];
            xx += x[c] * x[c];
            yy += y[c] * y[c];
          }
          const T nx = std::sqrt(xx);
          const T ny = std::sqrt(yy);
          if (nx < T(kZeroNorm) || ny < T(kZeroNorm)) continue;
          const T inv = T(1) / (nx * ny);
          const T cos = xy * inv;
          // d cos / dx = y / (|x||y|) - cos * x / |x|^2, symmetric in y.
          const T x_self = options.corrupt_cosine_grad ? T(0) : cos / xx;
          const T y_self = options.corrupt_cosine_grad ? T(0) : cos / yy;
          auto& gx = feature_grad[k];
          for (std::size_t c = 0; c < c2; ++c) gx[c] += cos_grad * (y[c] * inv - x_self * x[c]);
          if (symptom_grads) {
            auto& gy = symptom_grads->features[i][j][k];
            for (std::size_t c = 0; c < c2; ++c) gy[c] += cos_grad * (x[c] * inv - y_self * y[c]);
          }
        }
      }
    }
  }

  if (input_grad) input_grad->assign(trace.target.length * trace.target.dim, T(0));
  for (std::size_t k = 0; k < kChannelCount; ++k) {
    backward_channel(params.channels[k], trace.target.channels[k], trace.target.input, std::span<const T>(feature_grad[k]),
                     grads.channels[k], input_grad ? input_grad->data() : nullptr);
  }
}

template <typename T>
void backward_symptoms(const Params<T>& params, const SymptomBank<T>& bank, const SymptomGrads<T>& symptom_grads,
                       Params<T>& grads) {
  for (std::size_t i = 0; i < bank.heads.size(); ++i) {
    for (std::size_t j = 0; j < bank.heads[i].size(); ++j) {
      const auto& branch = bank.heads[i][j];
      for (std::size_t k = 0; k < kChannelCount; ++k) {
        backward_channel(params.channels[k], branch.channels[k], branch.input,
                         std::span<const T>(symptom_grads.features[i][j][k]), grads.channels[k], static_cast<T*>(nullptr));
      }
    }
  }
}

template <typename T>
Params<T> backward(const Params<T>& params, const SymptomBank<T>& bank, const ForwardTrace<T>& trace,
                   const std::array<T, kClasses>& grad_logits, const BackwardOptions& options) {
  Params<T> grads = Params<T>::zeros(params.config);
  auto sg = SymptomGrads<T>::zeros_like(bank, params.config.c2);
  backward_target(params, bank, trace, grad_logits, grads, &sg, static_cast<std::vector<T>*>(nullptr), options);
  backward_symptoms(params, bank, sg, grads);
  return grads;
}

#define MHS_INSTANTIATE(T)                                                                                          \
  template std::vector<T> channel_features(const ChannelParams<T>&, const EmbeddedSequence&);                       \
  template BranchTrace<T> encode_branch(const Params<T>&, const EmbeddedSequence&);                                 \
  template SymptomBank<T> encode_symptoms(const Params<T>&, const SymptomInputs&);                                  \
  template T cosine_similarity(std::span<const T>, std::span<const T>, bool);                                       \
  template std::array<T, kClasses> softmax(const std::array<T, kClasses>&);                                         \
  template T softmax_cross_entropy(const std::array<T, kClasses>&, int, std::array<T, kClasses>*);                  \
  template ForwardTrace<T> forward(const Params<T>&, const EmbeddedSequence&, const SymptomBank<T>&,                \
                                   const ForwardOptions&);                                                          \
  template struct SymptomGrads<T>;                                                                                  \
  template void backward_target(const Params<T>&, const SymptomBank<T>&, const ForwardTrace<T>&,                    \
                                const std::array<T, kClasses>&, Params<T>&, SymptomGrads<T>*, std::vector<T>*,      \
                                const BackwardOptions&);                                                            \
  template void backward_symptoms(const Params<T>&, const SymptomBank<T>&, const SymptomGrads<T>&, Params<T>&);     \
  template Params<T> backward(const Params<T>&, const SymptomBank<T>&, const ForwardTrace<T>&,                      \
                              const std::array<T, kClasses>&, const BackwardOptions&);

MHS_INSTANTIATE(float)
MHS_INSTANTIATE(double)

#undef MHS_INSTANTIATE

}  // namespace mhs
