#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mhs/model.hpp"

namespace mhs {

struct GradcheckOptions {
  std::uint64_t seed = 1;
  std::size_t dim = 8;
  std::size_t c1 = 4;
  std::size_t c2 = 4;
  std::size_t heads = 3;
  std::size_t max_sentences = 3;
  std::size_t batch = 2;
  Variant variant = Variant::Full;
  double epsilon = 1e-4;
  double tolerance = 1e-3;
  bool corrupt_cosine_grad = false;
};

struct TensorCheck {
  std::string name;
  std::size_t elements = 0;
  double max_relative_error = 0.0;
  bool passed = true;
};

struct GradcheckReport {
  std::vector<TensorCheck> tensors;
  bool passed = true;
};

/// Compares the analytic batch gradient of the mean cross-entropy with
/// central finite differences, in double precision, on a random toy model.
/// Per element: |a - n| / max(1e-6, |a|, |n|).
GradcheckReport gradcheck(const GradcheckOptions& options = {});

}  // namespace mhs
