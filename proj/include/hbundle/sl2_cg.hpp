#pragma once

#include <cmath>
#include <vector>

#include "hbundle/common.hpp"

namespace hbundle {

enum class Direction { Up, Down };

inline char direction_char(Direction d) { return d == Direction::Up ? 'U' : 'D'; }

struct IrrepSpec {
  double lambda_weight = 0.0;  // rho0(zhat) = i * lambda_weight
  int sym_power = 0;
};

/// chi_lambda (x) Sym^k realized on the orthonormal weight basis
/// e_a ~ sqrt(binom(k,a)) x^{k-a} y^a, highest weight first.
struct IrrepRealization {
  IrrepSpec spec;
  Mat H, E, F;

  int dim() const { return spec.sym_power + 1; }
  /// Action of zhat: i * lambda_weight * identity.
  Mat zhat() const;
  /// Action of the traceless 2x2 block [[h, e], [f, -h]] of k_ss.
  Mat ss(const Mat& block) const;
};

IrrepRealization sym_rep(int k, double lambda_weight);

/// Sym^k components of p- (x) Sym^k, for the C^2 ball.
std::vector<int> decompose_tensor(int k);

/// Co-isometry p- (x) Sym^k -> Sym^{k +- 1}; column index is i*(k+1) + a
/// for F_i (x) e_a. Rows use the orthonormal weight basis of the target.
struct CGProjection {
  Direction direction = Direction::Up;
  int source_k = 0;
  int target_k = 0;
  Mat P;

  /// rho~(F_i): Sym^k -> Sym^{k +- 1}, v -> P(F_i (x) v).
  Mat rho_tilde(int i) const;
};

CGProjection cg_projection(int k, Direction direction);

/// rho~(Y) v = P(Y (x) v) with Y given by its F-coordinates.
Vec rho_tilde(const CGProjection& p, const Vec& y, const Vec& v);

/// Dimension of the space of sl(2)-equivariant maps p- (x) Sym^k -> Sym^target,
/// by exact rational null-space computation on the monomial weight bases.
int equivariant_map_dimension(int k, int target);

/// The natural identification p- -> Sym^1 (F_2 -> u_0, F_1 -> -u_1).
Mat minus_to_sym1();

/// Sym^k of a 2x2 matrix M acting on C^2 = Sym^1, expressed in the
/// orthonormal weight basis. T only needs ring operations and scaling by double.
template <class T, class M2>
std::vector<std::vector<T>> sym_power_matrix(const M2& m, int k) {
  // m(r, c) gives the entries; x -> m00 x + m10 y, y -> m01 x + m11 y.
  auto binom = [](int a, int b) {
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * double(a - b + i) / double(i);
    return r;
  };
  std::vector<std::vector<T>> out(k + 1, std::vector<T>(k + 1, T(0.0)));
  const T m00 = m(0, 0), m10 = m(1, 0), m01 = m(0, 1), m11 = m(1, 1);
  // coefficient vectors of powers, index b = power of y
  auto power = [&](const T& px, const T& py, int e) {
    std::vector<T> poly(e + 1, T(0.0));
    poly[0] = T(1.0);
    for (int s = 0; s < e; ++s) {
      std::vector<T> next(e + 1, T(0.0));
      for (int b = 0; b <= s; ++b) {
        next[b] = next[b] + poly[b] * px;
        next[b + 1] = next[b + 1] + poly[b] * py;
      }
      poly = std::move(next);
    }
    return poly;
  };
  for (int a = 0; a <= k; ++a) {
    const auto px = power(m00, m10, k - a);
    const auto py = power(m01, m11, a);
    std::vector<T> prod(k + 1, T(0.0));
    for (int i = 0; i <= k - a; ++i)
      for (int j = 0; j <= a; ++j) prod[i + j] = prod[i + j] + px[i] * py[j];
    for (int b = 0; b <= k; ++b)
      out[b][a] = prod[b] * std::sqrt(binom(k, a) / binom(k, b));
  }
  return out;
}

/// Complex convenience wrapper around sym_power_matrix.
Mat sym_power(const Mat& m2, int k);

}  // namespace hbundle
