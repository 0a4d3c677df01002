#include <gtest/gtest.h>

#include "hbundle/gamma_op.hpp"

using namespace hbundle;

namespace {

FiliformSpec chain(int n, Direction dir, int k0, int m, double lambda, std::vector<cplx> y = {}) {
  FiliformSpec s;
  s.n = n;
  s.direction = dir;
  s.k0 = k0;
  s.m = m;
  s.lambda0 = lambda;
  s.y = y.empty() ? std::vector<cplx>(m, 1.0) : y;
  return s;
}

double identity_distance(const GammaOperator& g) {
  const int dim = g.space.dim();
  return (Mat(g.op.matrix) - Mat::Identity(dim, dim)).norm();
}

}  // namespace

TEST(GammaOp, TrivialCasesAreIdentity) {
  const auto ctx = StructureContext::make(2);
  const auto single = realize(chain(2, Direction::Up, 1, 0, -1.3));
  EXPECT_EQ(identity_distance(build_gamma(single, ctx, constants_for(single, ctx), 4)), 0.0);

  const auto rep = realize(chain(2, Direction::Up, 1, 2, -1.3)).with_zero_y();
  const auto table = cjk_table(0.0, 0.0, -1.3, 2, 2);
  EXPECT_EQ(identity_distance(build_gamma(rep, ctx, table, 4)), 0.0);
}

TEST(GammaOp, ComposesLinkOperators) {
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(chain(2, Direction::Up, 0, 2, -1.3, {cplx(0.8, 0.1), 1.7}));
  const auto table = constants_for(rep, ctx);
  const int d = 4;
  const auto gamma = build_gamma(rep, ctx, table, d);
  const SpMat l1 = p_iota_d(rep, ctx, 0, true, gamma.space), l2 = p_iota_d(rep, ctx, 1, true, gamma.space);
  const int dim = gamma.space.dim();
  const Mat expected = Mat::Identity(dim, dim) + table.cjk(1, 0) * Mat(l1) + table.cjk(2, 1) * Mat(l2) +
                       table.cjk(2, 0) * Mat(l2 * l1);
  EXPECT_LT((Mat(gamma.op.matrix) - expected).norm(), 1e-12 * expected.norm());
}

TEST(GammaOp, ConstantSectionIsKilledAndLinearOneLifts) {
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(chain(2, Direction::Up, 0, 1, -1.3));
  const SectionSpace s(2, rep.dim, 2);
  auto f = PolySection::zero(s);
  f.set({0, 0}, 0, 1.0);
  const SpMat l = p_iota_d(rep, ctx, 0, false, s);
  EXPECT_EQ((l * f.coeffs).norm(), 0.0);

  // f = z_1 v: D f(E_1) = v and B^{-1} = 1/6, so the result is rho~(F_1) v / 6.
  auto g = PolySection::zero(s);
  g.set({1, 0}, 0, 1.0);
  const Vec image = l * g.coeffs;
  const auto p = cg_projection(0, Direction::Up);
  Vec expected = Vec::Zero(s.dim());
  for (int a = 0; a < 2; ++a) expected(s.index(s.monomial_index({0, 0}), 1 + a)) = p.rho_tilde(0)(a, 0) / 6.0;
  EXPECT_LT((image - expected).norm(), 1e-14);
}

TEST(GammaOp, InverseComposesToIdentity) {
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(chain(2, Direction::Up, 1, 3, -1.3, {1.0, 0.7, cplx(0.2, 0.9)}));
  const auto gamma = build_gamma(rep, ctx, constants_for(rep, ctx), 6);
  const auto inv = invert_gamma(gamma);
  const int dim = gamma.space.dim();
  EXPECT_LT((Mat(gamma.op.matrix * inv.op.matrix) - Mat::Identity(dim, dim)).norm(), 1e-12);
  EXPECT_LT((Mat(invert_gamma(inv).op.matrix) - Mat(gamma.op.matrix)).norm(), 1e-12);
}

TEST(GammaOp, IrregularLambdaThrows) {
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(chain(2, Direction::Up, 1, 2, 1.0 / 3.0));
  const auto table = constants_for(rep, ctx);
  EXPECT_FALSE(table.regular);
  try {
    build_gamma(rep, ctx, table, 4);
    FAIL() << "irregular table accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PreconditionViolated);
  }
}

TEST(GammaOp, Intertwines) {
  const auto ctx = StructureContext::make(2);
  for (const auto& s : {chain(2, Direction::Up, 0, 2, -1.3), chain(2, Direction::Down, 3, 3, 0.8)}) {
    const auto rep = realize(s);
    const auto table = constants_for(rep, ctx);
    const int d = 5;
    const auto act0 = build_action(rep.with_zero_y(), ctx.full_basis(), d);
    const auto acty = build_action(rep, ctx.full_basis(), d);
    EXPECT_LT(verify_intertwining(build_gamma(rep, ctx, table, d), act0, acty), 1e-8);
    Mat c = table.cjk;
    c(1, 0) *= 1.1;
    EXPECT_GT(verify_intertwining(build_gamma(rep, ctx, c, d), act0, acty), 1e-2);
  }
}

TEST(GammaOp, ZeroYIntertwinesExactly) {
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(chain(2, Direction::Up, 1, 2, -1.3)).with_zero_y();
  const auto act = build_action(rep, ctx.full_basis(), 5);
  EXPECT_EQ(verify_intertwining(build_gamma(rep, ctx, cjk_table(0.0, 0.0, -1.3, 2, 2), 5), act, act), 0.0);
}

TEST(GammaOp, SolverMatchesProductFormula) {
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(chain(2, Direction::Up, 1, 3, -1.3, {1.0, 0.7, 1.2}));
  const int d = 5;
  const auto closed = build_gamma(rep, ctx, constants_for(rep, ctx), d);
  const auto solved = solve_block_gamma(rep, ctx, d);
  EXPECT_TRUE(solved.solved);
  EXPECT_FALSE(solved.underdetermined);
  EXPECT_LT((Mat(closed.op.matrix) - Mat(solved.gamma.op.matrix)).norm(), 1e-9);
}

TEST(GammaOp, SolverHandlesDisjointChains) {
  // Two chains Sym^0 -> Sym^1 and Sym^2 -> Sym^3 side by side in one graded representation.
  const auto ctx = StructureContext::make(2);
  BlockSpec b;
  b.n = 2;
  b.lambda0 = -1.3;
  b.levels = {{{0, 1}, {2, 1}}, {{1, 1}, {3, 1}}};
  b.links = {{1, 0, 0, Mat::Constant(1, 1, 0.7)}, {1, 1, 1, Mat::Constant(1, 1, 1.4)}};
  const auto rep = realize(b);
  const int d = 5;
  const auto solved = solve_block_gamma(rep, ctx, d);
  EXPECT_TRUE(solved.solved);
  EXPECT_LT(solved.verify_residual, 1e-8);
  ASSERT_EQ(solved.gamma.paths.size(), 2u);
  for (size_t p = 0; p < 2; ++p) {
    const auto single = realize(cartan_chain(p == 0 ? 0 : 2, 1, -1.3, {p == 0 ? 0.7 : 1.4}));
    const auto table = constants_for(single, ctx);
    EXPECT_LT(std::abs(solved.gamma.constants[p] - table.cjk(1, 0)), 1e-9);
  }
}

TEST(GammaOp, BrokenAffineConditionHasNoSolution) {
  // Shifting the weight of one level moves its constant off the affine line.
  const auto ctx = StructureContext::make(2);
  auto rep = realize(chain(2, Direction::Up, 0, 3, -1.3));
  for (auto& blk : rep.blocks)
    if (blk.level == 2) blk.weight += 0.37;
  try {
    solve_block_gamma(rep, ctx, 5);
    FAIL() << "inconsistent system reported as solved";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoSolution);
  }
}
