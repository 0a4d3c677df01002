#pragma once

#include <cmath>

#include "hbundle/sl2_cg.hpp"

namespace hbundle {

/// a + b e1 + c e2 + d e1 e2 with e1^2 = e2^2 = 0. Carries one mixed second derivative.
struct HyperDual {
  cplx a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  HyperDual() = default;
  HyperDual(double v) : a(v) {}
  HyperDual(cplx v) : a(v) {}
  HyperDual(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {}

  friend HyperDual operator+(const HyperDual& x, const HyperDual& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend HyperDual operator-(const HyperDual& x, const HyperDual& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend HyperDual operator*(const HyperDual& x, const HyperDual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a,
            x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
  }
  friend HyperDual operator*(const HyperDual& x, double s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }
};

inline HyperDual pow(const HyperDual& x, double p) {
  const cplx f = std::pow(x.a, p);
  const cplx f1 = p * std::pow(x.a, p - 1.0);
  const cplx f2 = p * (p - 1.0) * std::pow(x.a, p - 2.0);
  return {f, f1 * x.b, f1 * x.c, f1 * x.d + f2 * x.b * x.c};
}

inline cplx pow(const cplx& x, double p) { return std::pow(x, p); }

namespace detail {
template <class T>
struct Small2 {
  T v[2][2];
  const T& operator()(int r, int c) const { return v[r][c]; }
};
}  // namespace detail

template <class T>
std::vector<std::vector<T>> KernelFunction::eval_closed(const std::vector<T>& z, const std::vector<T>& wbar) const {
  T t = T(0.0);
  for (int i = 0; i < n; ++i) t = t + wbar[i] * z[i];
  const T d = T(1.0) - t;
  const T scale = pow(d, exponent());
  const int k = sigma.sym_power;
  if (n == 1 || k == 0) return {{scale}};
  detail::Small2<T> m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.v[r][c] = T(r == c ? 1.0 : 0.0) - z[r] * wbar[c];
  auto out = sym_power_matrix<T>(m, k);
  for (auto& row : out)
    for (auto& e : row) e = scale * e;
  return out;
}

}  // namespace hbundle
