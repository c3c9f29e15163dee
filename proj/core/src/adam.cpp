#include "mhs/adam.hpp"

#include <cmath>

#include "mhs/error.hpp"

namespace mhs {

template <typename T>
AdamState<T> AdamState<T>::init(const Params<T>& params) {
  AdamState s;
  for (const auto& t : params.tensors()) {
    s.first_moment.emplace_back(t.values.size(), T(0));
    s.second_moment.emplace_back(t.values.size(), T(0));
  }
  return s;
}

template <typename T>
void adam_step(Params<T>& params, const Params<T>& grads, AdamState<T>& state, double learning_rate,
               const AdamConfig& config) {
  auto p = params.tensors();
  const auto g = grads.tensors();
  if (g.size() != p.size() || state.first_moment.size() != p.size() || state.second_moment.size() != p.size()) {
    throw Error(ErrorCode::ShapeError, "Adam: tensor count mismatch");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (g[i].values.size() != p[i].values.size() || state.first_moment[i].size() != p[i].values.size() ||
        state.second_moment[i].size() != p[i].values.size()) {
      throw Error(ErrorCode::ShapeError, "Adam: shape mismatch on " + p[i].name);
    }
  }

  ++state.step;
  const T b1 = static_cast<T>(config.beta1);
  const T b2 = static_cast<T>(config.beta2);
  const T eps = static_cast<T>(config.epsilon);
  const T lr = static_cast<T>(learning_rate);
  const T correction1 = static_cast<T>(1.0 - std::pow(config.beta1, static_cast<double>(state.step)));
  const T correction2 = static_cast<T>(1.0 - std::pow(config.beta2, static_cast<double>(state.step)));

  for (std::size_t i = 0; i < p.size(); ++i) {
    auto& m = state.first_moment[i];
    auto& v = state.second_moment[i];
    auto theta = p[i].values;
    const auto grad = g[i].values;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      m[j] = b1 * m[j] + (T(1) - b1) * grad[j];
      v[j] = b2 * v[j] + (T(1) - b2) * grad[j] * grad[j];
      const T m_hat = m[j] / correction1;
      const T v_hat = v[j] / correction2;
      theta[j] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

template struct AdamState<float>;
template struct AdamState<double>;
template void adam_step(Params<float>&, const Params<float>&, AdamState<float>&, double, const AdamConfig&);
template void adam_step(Params<double>&, const Params<double>&, AdamState<double>&, double, const AdamConfig&);

}  // namespace mhs
