#include <gtest/gtest.h>

#include "hbundle/lie_core.hpp"
#include "test_helpers.hpp"

using namespace hbundle;
using hbundle::testing::random_traceless;

namespace {

// tr(ad X ad Y) over the (n+1)^2 - 1 dimensional algebra, with coordinates
// taken in the basis of traceless elementary combinations.
cplx killing_by_adjoint_trace(const StructureContext& ctx, const LieElement& x, const LieElement& y) {
  const int a = ctx.ambient();
  std::vector<Mat> basis;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j)
      if (i != j) {
        Mat e = Mat::Zero(a, a);
        e(i, j) = 1.0;
        basis.push_back(e);
      }
  for (int i = 0; i + 1 < a; ++i) {
    Mat h = Mat::Zero(a, a);
    h(i, i) = 1.0;
    h(i + 1, i + 1) = -1.0;
    basis.push_back(h);
  }
  const int dim = static_cast<int>(basis.size());
  Mat coords(a * a, dim);
  for (int k = 0; k < dim; ++k) coords.col(k) = Eigen::Map<const Vec>(basis[k].data(), a * a);
  const auto solver = coords.colPivHouseholderQr();
  Mat ad(dim, dim);
  for (int k = 0; k < dim; ++k) {
    Mat z = x.matrix() * y.matrix() * basis[k] - x.matrix() * basis[k] * y.matrix() -
            y.matrix() * basis[k] * x.matrix() + basis[k] * y.matrix() * x.matrix();
    ad.col(k) = solver.solve(Eigen::Map<const Vec>(z.data(), a * a));
  }
  return ad.trace();
}

}  // namespace

TEST(LieCore, BracketExamples) {
  const auto ctx = StructureContext::make(2);
  const auto& e1 = ctx.p_plus[0];
  EXPECT_LT(bracket(e1, e1).matrix().norm(), 1e-15);
  const auto h = bracket(e1, ctx.p_minus[0]);
  const auto parts = cartan_components(h);
  EXPECT_LT((parts.zero.matrix() - h.matrix()).norm(), 1e-15);
  EXPECT_LT((h.matrix() - (e1.matrix() * ctx.p_minus[0].matrix() - ctx.p_minus[0].matrix() * e1.matrix())).norm(),
            1e-15);
  EXPECT_LT((bracket(ctx.zhat, e1).matrix() - I_unit * e1.matrix()).norm(), 1e-15);
}

TEST(LieCore, ZhatGradesPlusAndMinus) {
  for (int n : {1, 2}) {
    const auto ctx = StructureContext::make(n);
    for (const auto& e : ctx.p_plus) EXPECT_LT((bracket(ctx.zhat, e) - e * I_unit).matrix().norm(), 1e-15);
    for (const auto& f : ctx.p_minus) EXPECT_LT((bracket(ctx.zhat, f) + f * I_unit).matrix().norm(), 1e-15);
    for (const auto& k : ctx.k_ss) EXPECT_LT(bracket(ctx.zhat, k).matrix().norm(), 1e-15);
  }
}

TEST(LieCore, JacobiOnRandomTriples) {
  std::mt19937_64 rng(1);
  for (int n : {1, 2})
    for (int t = 0; t < 20; ++t) {
      const LieElement x(random_traceless(rng, n + 1)), y(random_traceless(rng, n + 1)), z(random_traceless(rng, n + 1));
      const auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      EXPECT_LT(j.matrix().norm(), 1e-13);
    }
}

TEST(LieCore, KillingMatchesAdjointTrace) {
  for (int n : {1, 2}) {
    const auto ctx = StructureContext::make(n);
    const cplx expected = killing_by_adjoint_trace(ctx, ctx.p_plus[0], ctx.p_minus[0]);
    EXPECT_NEAR(std::abs(killing(ctx.p_plus[0], ctx.p_minus[0]) - expected), 0.0, 1e-12);
    EXPECT_NEAR(expected.real(), 2.0 * (n + 1), 1e-12);
    EXPECT_NEAR(ctx.killing_scale, 2.0 * (n + 1), 0.0);
  }
  std::mt19937_64 rng(2);
  const auto ctx = StructureContext::make(2);
  for (int t = 0; t < 10; ++t) {
    const LieElement x(random_traceless(rng, 3)), y(random_traceless(rng, 3));
    EXPECT_LT(std::abs(killing(x, y) - killing_by_adjoint_trace(ctx, x, y)), 1e-10);
  }
}

TEST(LieCore, KillingSymmetricAndInvariant) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const LieElement x(random_traceless(rng, 3)), y(random_traceless(rng, 3)), z(random_traceless(rng, 3));
    EXPECT_LT(std::abs(killing(x, y) - killing(y, x)), 1e-12);
    EXPECT_LT(std::abs(killing(bracket(z, x), y) + killing(x, bracket(z, y))), 1e-11);
  }
}

TEST(LieCore, PairingIsDiagonal) {
  const auto ctx = StructureContext::make(2);
  EXPECT_LT((ctx.pairing() - 6.0 * Mat::Identity(2, 2)).norm(), 1e-14);
}

TEST(LieCore, CartanComponents) {
  const auto ctx = StructureContext::make(2);
  const auto p = cartan_components(ctx.p_plus[1]);
  EXPECT_LT((p.plus - ctx.p_plus[1]).matrix().norm(), 1e-15);
  EXPECT_LT(p.zero.matrix().norm() + p.minus.matrix().norm(), 1e-15);

  const auto x = ctx.p_plus[0] + ctx.zhat + ctx.p_minus[1];
  const auto q = cartan_components(x);
  EXPECT_LT((q.plus - ctx.p_plus[0]).matrix().norm(), 1e-15);
  EXPECT_LT((q.zero - ctx.zhat).matrix().norm(), 1e-15);
  EXPECT_LT((q.minus - ctx.p_minus[1]).matrix().norm(), 1e-15);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const LieElement r(random_traceless(rng, 3));
    const auto c = cartan_components(r);
    EXPECT_LT((c.plus + c.zero + c.minus - r).matrix().norm(), 1e-14);
  }
}

TEST(LieCore, ConjFixesCompactBasis) {
  for (int n : {1, 2}) {
    const auto ctx = StructureContext::make(n);
    EXPECT_EQ(static_cast<int>(ctx.compact_basis().size()), (n + 1) * (n + 1) - 1);
    for (const auto& x : ctx.compact_basis()) EXPECT_LT((ctx.conj(x) - x).matrix().norm(), 1e-15);
  }
}

TEST(LieCore, IotaExamples) {
  const auto ctx = StructureContext::make(2);
  std::mt19937_64 rng(5);
  const Vec w1 = hbundle::testing::random_vector(rng, 3), w2 = hbundle::testing::random_vector(rng, 3);

  // L = B(., F_1) w1 has values B(E_i, F_1) w1 on E_i.
  Mat values = Mat::Zero(3, 2);
  for (int i = 0; i < 2; ++i) values.col(i) = killing(ctx.p_plus[i], ctx.p_minus[0]) * w1;
  Mat t = iota(ctx, values);
  EXPECT_LT((t.col(0) - w1).norm(), 1e-14);
  EXPECT_LT(t.col(1).norm(), 1e-14);

  EXPECT_EQ(iota(ctx, Mat::Zero(3, 2)).norm(), 0.0);

  for (int i = 0; i < 2; ++i)
    values.col(i) = killing(ctx.p_plus[i], ctx.p_minus[0]) * w1 + killing(ctx.p_plus[i], ctx.p_minus[1]) * w2;
  t = iota(ctx, values);
  EXPECT_LT((t.col(0) - w1).norm() + (t.col(1) - w2).norm(), 1e-14);
  EXPECT_LT((iota_inverse(ctx, t) - values).norm(), 1e-13);
}
