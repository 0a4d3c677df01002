#include "hbundle/sl2_cg.hpp"

#include <boost/rational.hpp>

namespace hbundle {

namespace {

using Rational = boost::rational<long long>;
using RatMatrix = std::vector<std::vector<Rational>>;

// sl(2) generators on Sym^k in the monomial basis m_a = x^{k-a} y^a.
struct MonomialGenerators {
  RatMatrix h, e, f;
};

MonomialGenerators monomial_generators(int k) {
  const int d = k + 1;
  MonomialGenerators g{RatMatrix(d, std::vector<Rational>(d)), RatMatrix(d, std::vector<Rational>(d)),
                       RatMatrix(d, std::vector<Rational>(d))};
  for (int a = 0; a <= k; ++a) {
    g.h[a][a] = k - 2 * a;
    if (a > 0) g.e[a - 1][a] = a;
    if (a < k) g.f[a + 1][a] = k - a;
  }
  return g;
}

RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
  const size_t ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
  RatMatrix out(ra * rb, std::vector<Rational>(ca * cb));
  for (size_t i = 0; i < ra; ++i)
    for (size_t j = 0; j < ca; ++j)
      for (size_t k = 0; k < rb; ++k)
        for (size_t l = 0; l < cb; ++l) out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return out;
}

RatMatrix identity(int d) {
  RatMatrix out(d, std::vector<Rational>(d));
  for (int i = 0; i < d; ++i) out[i][i] = 1;
  return out;
}

RatMatrix add(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) out[i][j] += b[i][j];
  return out;
}

// Null space of an exact rational matrix via reduced row echelon form.
std::vector<std::vector<Rational>> null_space(RatMatrix a, size_t cols) {
  const size_t rows = a.size();
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c].numerator() == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].numerator() == 0) continue;
      const Rational fct = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= fct * a[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Equivariant maps Sym^1 (x) Sym^k -> Sym^t, in monomial bases, as a null space.
std::vector<std::vector<Rational>> equivariant_maps(int k, int t) {
  const int src = 2 * (k + 1);
  const int dst = t + 1;
  const auto g1 = monomial_generators(1);
  const auto gk = monomial_generators(k);
  const auto gt = monomial_generators(t);
  const RatMatrix id1 = identity(2), idk = identity(k + 1);
  const std::vector<std::pair<RatMatrix, const RatMatrix*>> gens = {
      {add(kron(g1.h, idk), kron(id1, gk.h)), &gt.h},
      {add(kron(g1.e, idk), kron(id1, gk.e)), &gt.e},
      {add(kron(g1.f, idk), kron(id1, gk.f)), &gt.f},
  };
  const size_t unknowns = static_cast<size_t>(dst) * src;
  RatMatrix system;
  for (const auto& [a, xt] : gens) {
    // (T A - X_t T)[r][c] = 0
    for (int r = 0; r < dst; ++r) {
      for (int c = 0; c < src; ++c) {
        std::vector<Rational> row(unknowns);
        for (int cp = 0; cp < src; ++cp) row[r * src + cp] += a[cp][c];
        for (int rp = 0; rp < dst; ++rp) row[rp * src + c] -= (*xt)[r][rp];
        system.push_back(std::move(row));
      }
    }
  }
  return null_space(std::move(system), unknowns);
}

double binom(int a, int b) {
  double r = 1.0;
  for (int i = 1; i <= b; ++i) r = r * double(a - b + i) / double(i);
  return r;
}

}  // namespace

Mat IrrepRealization::zhat() const {
  return Mat::Identity(dim(), dim()) * (I_unit * spec.lambda_weight);
}

Mat IrrepRealization::ss(const Mat& block) const {
  return block(0, 0) * H + block(0, 1) * E + block(1, 0) * F;
}

IrrepRealization sym_rep(int k, double lambda_weight) {
  require(k >= 0, Errc::PreconditionViolated, "sym_power must be nonnegative");
  IrrepRealization r;
  r.spec = {lambda_weight, k};
  const int d = k + 1;
  r.H = Mat::Zero(d, d);
  r.E = Mat::Zero(d, d);
  for (int a = 0; a <= k; ++a) {
    r.H(a, a) = double(k - 2 * a);
    if (a > 0) r.E(a - 1, a) = std::sqrt(double(a) * double(k - a + 1));
  }
  r.F = r.E.transpose();
  return r;
}

std::vector<int> decompose_tensor(int k) {
  require(k >= 0, Errc::PreconditionViolated, "sym_power must be nonnegative");
  if (k == 0) return {1};
  return {k + 1, k - 1};
}

Mat minus_to_sym1() {
  Mat u = Mat::Zero(2, 2);
  u(0, 1) = 1.0;   // F_2 -> u_0
  u(1, 0) = -1.0;  // F_1 -> -u_1
  return u;
}

int equivariant_map_dimension(int k, int target) {
  require(k >= 0 && target >= 0, Errc::PreconditionViolated, "sym powers must be nonnegative");
  return static_cast<int>(equivariant_maps(k, target).size());
}

CGProjection cg_projection(int k, Direction direction) {
  require(k >= 0, Errc::PreconditionViolated, "sym_power must be nonnegative");
  require(direction == Direction::Up || k >= 1, Errc::PreconditionViolated,
          "Down projection needs k >= 1");
  const int t = direction == Direction::Up ? k + 1 : k - 1;
  const auto basis = equivariant_maps(k, t);
  require(basis.size() == 1, Errc::NumericBreakdown, "equivariant map space is not one-dimensional");

  const int src = 2 * (k + 1);
  Mat tm(t + 1, src);
  for (int r = 0; r <= t; ++r)
    for (int c = 0; c < src; ++c) tm(r, c) = boost::rational_cast<double>(basis[0][r * src + c]);

  // Monomial -> orthonormal weight coordinates: e = D^{-1/2} m.
  Eigen::VectorXd in_scale(src), out_scale(t + 1);
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a <= k; ++a) in_scale(i * (k + 1) + a) = std::sqrt(binom(k, a));
  for (int b = 0; b <= t; ++b) out_scale(b) = 1.0 / std::sqrt(binom(t, b));
  Mat te = out_scale.asDiagonal() * tm * in_scale.asDiagonal();

  // Sym^1 (x) Sym^k -> p- (x) Sym^k identification.
  Mat u = minus_to_sym1();
  Mat uk = Mat::Zero(src, src);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      uk.block(i * (k + 1), j * (k + 1), k + 1, k + 1) = u(i, j) * Mat::Identity(k + 1, k + 1);
  Mat p = te * uk;

  // P P^* is a multiple of the identity on an irreducible target (Schur).
  const double s = (p * p.adjoint()).trace().real() / double(t + 1);
  p /= std::sqrt(s);
  for (int c = 0; c < src; ++c) {
    if (std::abs(p(0, c)) > 1e-12) {
      p *= std::abs(p(0, c)) / p(0, c);
      break;
    }
  }
  return {direction, k, t, p};
}

Mat CGProjection::rho_tilde(int i) const {
  const int d = source_k + 1;
  return P.block(0, i * d, P.rows(), d);
}

Vec rho_tilde(const CGProjection& p, const Vec& y, const Vec& v) {
  require(y.size() == 2 && v.size() == p.source_k + 1, Errc::DimensionMismatch,
          "rho_tilde argument dimensions");
  Vec out = Vec::Zero(p.P.rows());
  for (int i = 0; i < 2; ++i) out += y(i) * (p.rho_tilde(i) * v);
  return out;
}

Mat sym_power(const Mat& m2, int k) {
  const auto rows = sym_power_matrix<cplx>(m2, k);
  Mat out(k + 1, k + 1);
  for (int b = 0; b <= k; ++b)
    for (int a = 0; a <= k; ++a) out(b, a) = rows[b][a];
  return out;
}

}  // namespace hbundle
