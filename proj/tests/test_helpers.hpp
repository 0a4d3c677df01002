#pragma once

#include <random>

#include "hbundle/common.hpp"

namespace hbundle::testing {

inline Mat random_matrix(std::mt19937_64& rng, int rows, int cols, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  return m;
}

inline Vec random_vector(std::mt19937_64& rng, int size, double scale = 1.0) {
  return random_matrix(rng, size, 1, scale).col(0);
}

inline Mat random_traceless(std::mt19937_64& rng, int size, double scale = 1.0) {
  Mat m = random_matrix(rng, size, size, scale);
  m -= (m.trace() / double(size)) * Mat::Identity(size, size);
  return m;
}

}  // namespace hbundle::testing
