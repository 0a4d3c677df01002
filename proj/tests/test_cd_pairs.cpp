#include <gtest/gtest.h>

#include "hbundle/cd_pairs.hpp"
#include "hbundle/rkhs.hpp"
#include "test_helpers.hpp"

using namespace hbundle;
using hbundle::testing::random_vector;

namespace {

FiliformSpec chain(Direction dir, int k0, int m, double lambda) {
  FiliformSpec s;
  s.n = 2;
  s.direction = dir;
  s.k0 = k0;
  s.m = m;
  s.lambda0 = lambda;
  s.y.assign(m, 1.0);
  return s;
}

struct Bundle {
  RepRealization rep;
  Mat g0, gy;
  SectionSpace space;
};

Bundle bundle(const FiliformSpec& s, int d) {
  const auto ctx = StructureContext::make(2);
  auto rep = realize(s);
  const auto g0 = gram_from_kernel(rep, d);
  const Mat gy = pushforward_gram(g0.gram, build_gamma(rep, ctx, constants_for(rep, ctx), d));
  return {rep, g0.gram, gy, SectionSpace(2, rep.dim, d)};
}

}  // namespace

TEST(CdPairs, ScalarAdjointIsWeightedShift) {
  const double nu = 3.0, lambda = -2.0;
  const auto g = gram_from_kernel(KernelFunction{2, {lambda, 0}, lambda}, 4);
  const auto pair = build_pair(g.gram, g.space);
  const auto& s = g.space;
  for (int a = 0; a < s.num_monomials(); ++a)
    for (int b = 0; b < s.num_monomials(); ++b) {
      const auto& al = s.monomial(a);
      const auto& be = s.monomial(b);
      const bool shift = al[0] == be[0] + 1 && al[1] == be[1];
      EXPECT_EQ(pair.mult[0](a, b), cplx(shift ? 1.0 : 0.0));
      // M_1^+ z^alpha = alpha_1 / (nu + |alpha| - 1) z^{alpha - e_1}
      const bool down = be[0] == al[0] - 1 && be[1] == al[1];
      const double expected = down ? al[0] / (nu + al[0] + al[1] - 1.0) : 0.0;
      EXPECT_NEAR(std::abs(pair.adjoint[0](b, a) - expected), 0.0, 1e-12);
    }
}

TEST(CdPairs, MultiplicationsCommuteAndAdjointsAreGramAdjoints) {
  const auto b = bundle(chain(Direction::Up, 1, 2, -1.3), 5);
  const auto pair = build_pair(b.gy, b.space);
  const int low = b.space.dim_up_to(3);
  const Mat comm = pair.mult[0] * pair.mult[1] - pair.mult[1] * pair.mult[0];
  EXPECT_EQ(comm.leftCols(low).norm(), 0.0);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 5; ++t) {
    Vec f = Vec::Zero(b.space.dim());
    f.head(b.space.dim_up_to(4)) = random_vector(rng, b.space.dim_up_to(4));
    const Vec g = random_vector(rng, b.space.dim());
    for (int i = 0; i < 2; ++i) {
      const cplx lhs = g.dot(b.gy * pair.mult[i] * f);
      const cplx rhs = (pair.adjoint[i] * g).dot(b.gy * f);
      EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(CdPairs, JointKernelDimension) {
  const auto b = bundle(chain(Direction::Up, 1, 2, -1.3), 8);
  const auto pair = build_pair(b.gy, b.space);
  const auto at0 = joint_kernel_dim(pair, Vec::Zero(2));
  EXPECT_EQ(at0.dimension, b.rep.dim);
  EXPECT_TRUE(at0.certified);
  Vec w(2);
  w << 0.3, 0.1;
  EXPECT_EQ(joint_kernel_dim(pair, w).dimension, b.rep.dim);
  const auto b9 = bundle(chain(Direction::Up, 1, 2, -1.3), 9);
  EXPECT_EQ(joint_kernel_dim(build_pair(b9.gy, b9.space), w).dimension, b.rep.dim);

  const auto scalar = gram_from_kernel(KernelFunction{2, {-2.0, 0}, -2.0}, 6);
  EXPECT_EQ(joint_kernel_dim(build_pair(scalar.gram, scalar.space), Vec::Zero(2)).dimension, 1);
}

TEST(CdPairs, IndefiniteGramIsRejected) {
  const SectionSpace s(2, 1, 2);
  Mat g = Mat::Identity(s.dim(), s.dim());
  g(3, 3) = -1.0;
  try {
    build_pair(g, s);
    FAIL() << "indefinite Gram accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IndefiniteGram);
  }
}

TEST(CdPairs, Homogeneity) {
  const auto ctx = StructureContext::make(2);
  const auto b = bundle(chain(Direction::Up, 1, 2, -1.3), 6);
  const auto pair = build_pair(b.gy, b.space);
  const auto act = build_action(b.rep, ctx.compact_basis(), 6);
  const auto h = homogeneity_check(pair, act);
  EXPECT_LT(h.skew_adjoint, 1e-8);
  EXPECT_LT(h.commutation, 1e-8);
  EXPECT_EQ(h.per_element_commutation.size(), act.ops.size());
}

TEST(CdPairs, EulerFieldCommutator) {
  // [pi(zhat), M_i] = -i M_i: multiplication by z_i raises the Euler degree by one.
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(chain(Direction::Up, 0, 1, -1.3));
  const int d = 4;
  const SectionSpace s(2, rep.dim, d);
  const Mat pz = Mat(infinitesimal_action(rep, ctx.zhat, d).matrix);
  const Mat m = Mat(s.lift(s.multiply(0), Mat::Identity(rep.dim, rep.dim)));
  const int low = s.dim_up_to(d - 1);
  const Mat comm = (pz * m - m * pz).leftCols(low);
  EXPECT_LT((comm + I_unit * m.leftCols(low)).norm(), 1e-12);
}

TEST(CdPairs, SimilarityBasics) {
  const auto b = bundle(chain(Direction::Up, 1, 2, -1.3), 4);
  const std::vector<int> degrees = {1, 2, 3, 4};
  const auto same = similarity_check(b.g0, b.g0, b.space, degrees);
  for (double c : same.condition) EXPECT_NEAR(c, 1.0, 1e-10);
  const auto doubled = similarity_check(b.g0, Mat(2.0 * b.g0), b.space, degrees);
  for (size_t i = 0; i < degrees.size(); ++i) {
    EXPECT_NEAR(doubled.condition[i], 1.0, 1e-10);
    EXPECT_NEAR(doubled.ratio_max[i], 2.0, 1e-10);
    EXPECT_NEAR(doubled.ratio_min[i], 2.0, 1e-10);
  }
  const auto real = similarity_check(b.g0, b.gy, b.space, degrees);
  EXPECT_TRUE(std::isfinite(real.spread));
  EXPECT_GE(real.spread, 1.0);
  EXPECT_EQ(real.intertwining, 0.0);
}
