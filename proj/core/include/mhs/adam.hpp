#pragma once

#include <cstdint>
#include <vector>

#include "mhs/model.hpp"

namespace mhs {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First and second moment accumulators, one buffer per parameter tensor in
/// Params::tensors() order.
template <typename T>
struct AdamState {
  std::vector<std::vector<T>> first_moment;
  std::vector<std::vector<T>> second_moment;
  std::uint64_t step = 0;

  static AdamState init(const Params<T>& params);

  bool operator==(const AdamState&) const = default;
};

/// One bias-corrected Adam update:
///   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2,
///   theta <- theta - lr * m_hat / (sqrt(v_hat) + eps).
/// Throws ShapeError when grads or state do not match params.
template <typename T>
void adam_step(Params<T>& params, const Params<T>& grads, AdamState<T>& state, double learning_rate,
               const AdamConfig& config = {});

}  // namespace mhs
