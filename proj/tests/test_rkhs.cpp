#include <cmath>

#include <gtest/gtest.h>

#include "hbundle/rkhs.hpp"
#include "test_helpers.hpp"

using namespace hbundle;

namespace {

FiliformSpec chain(int n, Direction dir, int k0, int m, double lambda) {
  FiliformSpec s;
  s.n = n;
  s.direction = dir;
  s.k0 = k0;
  s.m = m;
  s.lambda0 = lambda;
  s.y.assign(m, 1.0);
  return s;
}

double rising(double nu, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= nu + i;
  return r;
}

Vec point(double a, double b, double c, double d) {
  Vec z(2);
  z << cplx(a, b), cplx(c, d);
  return z;
}

}  // namespace

TEST(Rkhs, KtildeClosedFormMatchesFactorization) {
  std::mt19937_64 rng(31);
  EXPECT_LT((ktilde(point(0.2, 0.1, -0.3, 0.2), Vec::Zero(2)) - Mat::Identity(3, 3)).norm(), 1e-14);
  EXPECT_LT((ktilde(Vec::Zero(2), point(0.2, 0.1, -0.3, 0.2)) - Mat::Identity(3, 3)).norm(), 1e-14);
  for (int t = 0; t < 20; ++t) {
    const Vec z = random_ball_point(2, rng, 0.9), w = random_ball_point(2, rng, 0.9);
    const Mat a = ktilde(z, w), b = ktilde_closed(z, w);
    EXPECT_LT((a - b).norm(), 1e-12);
    EXPECT_LT(std::abs(a.topLeftCorner(2, 2).determinant() * a(2, 2) - 1.0), 1e-12);
  }
}

TEST(Rkhs, ScalarKernelIsPowerOfInnerProduct) {
  std::mt19937_64 rng(32);
  for (int n : {1, 2})
    for (double lambda : {-2.0, -0.7, 0.4}) {
      const KernelFunction k{n, {lambda, 0}, lambda};
      const double nu = -lambda * (n + 1.0) / n;
      for (int t = 0; t < 5; ++t) {
        const Vec z = random_ball_point(n, rng, 0.8), w = random_ball_point(n, rng, 0.8);
        const cplx expected = std::pow(1.0 - w.dot(z), -nu);
        EXPECT_LT(std::abs(k.eval(z, w)(0, 0) - expected), 1e-12 * std::abs(expected));
      }
    }
}

TEST(Rkhs, KernelRoutesAgreeAndAreHermitian) {
  std::mt19937_64 rng(33);
  for (int sym = 0; sym <= 3; ++sym) {
    const KernelFunction k{2, {-1.7, sym}, -1.7};
    for (int t = 0; t < 5; ++t) {
      const Vec z = random_ball_point(2, rng, 0.8), w = random_ball_point(2, rng, 0.8);
      const Mat a = k.eval(z, w);
      const auto closed = k.eval_closed<cplx>({z(0), z(1)}, {std::conj(w(0)), std::conj(w(1))});
      for (int r = 0; r <= sym; ++r)
        for (int c = 0; c <= sym; ++c) EXPECT_LT(std::abs(a(r, c) - closed[r][c]), 1e-12 * a.norm());
      EXPECT_LT((a.adjoint() - k.eval(w, z)).norm(), 1e-11 * a.norm());
    }
    const Vec z = random_ball_point(2, rng, 0.8);
    EXPECT_LT((k.eval(z, Vec::Zero(2)) - Mat::Identity(sym + 1, sym + 1)).norm(), 1e-14);
  }
}

TEST(Rkhs, ScalarNormsArePochhammerRatios) {
  for (int n : {1, 2}) {
    const double nu = 3.0, lambda = -nu * n / (n + 1.0);
    const auto g = gram_from_kernel(KernelFunction{n, {lambda, 0}, lambda}, 8);
    ASSERT_TRUE(g.positive);
    EXPECT_NEAR(std::abs(g.gram(0, 0) - 1.0), 0.0, 1e-14);
    for (int i = 0; i < g.space.num_monomials(); ++i) {
      const auto& al = g.space.monomial(i);
      const int len = al[0] + (n == 2 ? al[1] : 0);
      const double expected = std::tgamma(al[0] + 1.0) * std::tgamma((n == 2 ? al[1] : 0) + 1.0) / rising(nu, len);
      EXPECT_NEAR(g.gram(i, i).real(), expected, 1e-10 * expected);
      for (int j = 0; j < g.space.num_monomials(); ++j)
        if (j != i) EXPECT_LT(std::abs(g.gram(i, j)), 1e-12 * expected);
    }
  }
}

TEST(Rkhs, GramReproducesKernel) {
  // sum over monomials of z^a conj(w)^b (G^{-1})_{ab} recovers K(z,w) up to the truncation tail.
  const KernelFunction k{2, {-1.6, 2}, -1.6};
  const int d = 14;
  const auto g = gram_from_kernel(k, d);
  ASSERT_TRUE(g.positive);
  const Mat inv = g.gram.inverse();
  const Vec z = point(0.1, 0.05, -0.08, 0.1), w = point(-0.07, 0.02, 0.1, -0.05);
  const SectionSpace& s = g.space;
  Mat sum = Mat::Zero(3, 3);
  auto mono = [&](const Vec& x, int m) { return std::pow(x(0), s.monomial(m)[0]) * std::pow(x(1), s.monomial(m)[1]); };
  for (int a = 0; a < s.num_monomials(); ++a)
    for (int b = 0; b < s.num_monomials(); ++b) {
      const cplx f = mono(z, a) * std::conj(mono(w, b));
      for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) sum(u, v) += f * inv(s.index(a, u), s.index(b, v));
    }
  EXPECT_LT((sum - k.eval(z, w)).norm(), 1e-10);
}

TEST(Rkhs, FourierCoefficientsMatchSeries) {
  for (int sym : {0, 1, 2}) {
    const KernelFunction k{2, {-1.8, sym}, -1.8};
    const auto g = gram_from_kernel(k, 4);
    for (int d = 0; d <= 4; ++d) {
      const int off = g.space.block_offset(d), size = g.space.block_size(d);
      const Mat series = g.coefficients.block(off, off, size, size);
      const Mat fft = coefficient_block_fft(k, d);
      EXPECT_LT((series - fft).norm(), 1e-9 * series.norm()) << "sym=" << sym << " d=" << d;
    }
  }
}

TEST(Rkhs, GramBlocksAreKInvariant) {
  const auto ctx = StructureContext::make(2);
  for (int sym : {0, 1, 2, 3}) {
    const auto rep = realize(chain(2, Direction::Up, sym, 0, -2.0));
    const auto g = gram_from_kernel(rep, 6);
    EXPECT_LT(gram_k_invariance(g.gram, rep, ctx, 6), 1e-10);
  }
}

TEST(Rkhs, ThresholdScanIsMonotone) {
  const auto grid = [] {
    std::vector<double> v;
    for (int i = -25; i <= 5; ++i) v.push_back(0.1 * i);
    return v;
  }();
  const auto scalar = probe_lambda_threshold(2, 0, grid, 8);
  EXPECT_TRUE(scalar.monotone);
  ASSERT_TRUE(scalar.bracket.has_value());
  EXPECT_NEAR(scalar.bracket->first, -0.1, 1e-12);
  EXPECT_NEAR(scalar.bracket->second, 0.0, 1e-12);
  EXPECT_TRUE(scalar.positive.front());

  const auto sym1 = probe_lambda_threshold(2, 1, grid, 8);
  EXPECT_TRUE(sym1.monotone);
  ASSERT_TRUE(sym1.bracket.has_value());
  EXPECT_LT(sym1.bracket->second, scalar.bracket->second);

  const auto far = probe_lambda_threshold(2, 2, {-5.0}, 8);
  EXPECT_TRUE(far.positive.front());
}

TEST(Rkhs, PushforwardGram) {
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(chain(2, Direction::Up, 1, 2, -2.0));
  const int d = 5;
  const auto g0 = gram_from_kernel(rep, d);
  ASSERT_TRUE(g0.positive);
  const auto table = constants_for(rep, ctx);
  const auto gamma = build_gamma(rep, ctx, table, d);
  const Mat gy = pushforward_gram(g0.gram, gamma);
  const Mat back = Mat(gamma.op.matrix).adjoint() * gy * Mat(gamma.op.matrix);
  EXPECT_LT((back - g0.gram).norm(), 1e-11 * g0.gram.norm());

  const auto zero = rep.with_zero_y();
  const auto id = build_gamma(zero, ctx, cjk_table(0.0, 0.0, -2.0, 2, 2), d);
  EXPECT_LT((pushforward_gram(g0.gram, id) - g0.gram).norm(), 1e-15);

  const auto acty = build_action(rep, ctx.compact_basis(), d);
  EXPECT_LT(skew_adjointness_residual(gy, acty), 1e-8);
  Mat c = table.cjk;
  c(1, 0) *= 1.1;
  EXPECT_GT(skew_adjointness_residual(pushforward_gram(g0.gram, build_gamma(rep, ctx, c, d)), acty), 1e-2);
}

TEST(Rkhs, DifferenceKernel) {
  const auto grid = geometric_grid(1e-3, 1e3, 8);
  std::vector<double> minimal;
  for (unsigned seed : {7u, 11u, 13u}) {
    const auto pts = radial_shell_points(2, 20, seed);
    const auto res = difference_kernel_check(0, Direction::Up, -1.0, grid, pts);
    ASSERT_TRUE(res.minimal_c.has_value());
    EXPECT_LE(res.exact_c, *res.minimal_c);
    EXPECT_LT(res.min_eig_at_zero, -1e-10);
    EXPECT_GE(res.min_eig.back(), -1e-10);
    minimal.push_back(*res.minimal_c);
  }
  EXPECT_LE(*std::max_element(minimal.begin(), minimal.end()) / *std::min_element(minimal.begin(), minimal.end()),
            2.0);
}

TEST(Rkhs, DifferenceKernelPartsArePositive) {
  const auto pts = radial_shell_points(2, 8, 7);
  const auto [k1, k0] = difference_kernel_parts(0, Direction::Up, -1.0, pts);
  EXPECT_LT((k1 - k1.adjoint()).norm(), 1e-12 * k1.norm());
  EXPECT_LT((k0 - k0.adjoint()).norm(), 1e-12 * k0.norm());
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<Mat>(k1).eigenvalues().minCoeff(), 0.0);
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<Mat>(k0).eigenvalues().minCoeff(), -1e-10);
  EXPECT_GT(k0.norm(), 1e-6);
}
