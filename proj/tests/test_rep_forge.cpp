#include <cmath>

#include <gtest/gtest.h>

#include "hbundle/rep_forge.hpp"

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

// Product over i of 1 / (i * factor) written as a ratio of Gamma functions:
// prod_{i=1}^N (A + (2k+i-1)/2 B) = (B/2)^N Gamma(x + N) / Gamma(x), x = 2A/B + 2k.
double cjk_by_gamma(double u, double v, double lambda, int n, int j, int k) {
  const double a = u - lambda / (2.0 * n), b = v + 1.0 / (2.0 * n);
  const int len = j - k;
  const double x = 2.0 * a / b + 2.0 * k;
  const double prod = std::pow(b / 2.0, len) * std::exp(std::lgamma(x + len) - std::lgamma(x));
  return 1.0 / (std::tgamma(len + 1.0) * prod);
}

}  // namespace

TEST(RepForge, SingleLevelHasNoMinusPart) {
  const auto rep = realize(chain(2, Direction::Up, 2, 0, -1.0));
  EXPECT_EQ(rep.dim, 3);
  for (const auto& r : rep.rho_minus) EXPECT_EQ(r.norm(), 0.0);
  const auto v = validate(rep);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.eq1, 0.0);
  EXPECT_EQ(v.commutativity, 0.0);
}

TEST(RepForge, UpChainFromTrivial) {
  auto spec = chain(2, Direction::Up, 0, 2, 2.5);
  const auto rep = realize(spec);
  EXPECT_EQ(rep.dim, 6);
  EXPECT_LT((rep.rho_minus[0] * rep.rho_minus[1] - rep.rho_minus[1] * rep.rho_minus[0]).norm(), 1e-13);
  EXPECT_TRUE(validate(rep).pass);
  EXPECT_EQ(rep.level_dim(0), 1);
  EXPECT_EQ(rep.level_dim(1), 2);
  EXPECT_EQ(rep.level_dim(2), 3);
}

TEST(RepForge, MixedChainIsRejected) {
  BlockSpec b;
  b.n = 2;
  b.lambda0 = 0.5;
  b.levels = {{{0, 1}}, {{1, 1}}, {{0, 1}}};
  b.links = {{1, 0, 0, Mat::Identity(1, 1)}, {2, 0, 0, Mat::Identity(1, 1)}};
  try {
    realize(b);
    FAIL() << "mixed chain accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InadmissibleChain);
  }
  // The same chain built without the gate violates commutativity.
  const auto rep = realize_unchecked(b);
  EXPECT_GT((rep.rho_minus[0] * rep.rho_minus[1] - rep.rho_minus[1] * rep.rho_minus[0]).norm(), 1e-3);
}

TEST(RepForge, CorruptedMinusPartFailsValidation) {
  auto rep = realize(chain(2, Direction::Up, 1, 2, -1.3));
  rep.rho_minus[0](0, 0) += 1.0;
  const auto v = validate(rep);
  EXPECT_FALSE(v.pass);
  EXPECT_GT(std::max({v.eq1, v.commutativity, v.grading}), 1e-3);
}

TEST(RepForge, WithZeroYKeepsBlocks) {
  const auto rep = realize(chain(2, Direction::Up, 1, 2, -1.3));
  const auto zero = rep.with_zero_y();
  EXPECT_EQ(zero.dim, rep.dim);
  for (const auto& r : zero.rho_minus) EXPECT_EQ(r.norm(), 0.0);
  const Mat k = StructureContext::make(2).zhat.matrix();
  EXPECT_LT((zero.rho0(k) - rep.rho0(k)).norm(), 1e-15);
}

TEST(RepForge, ClassifyExamples) {
  EXPECT_EQ(classify_chains(2, 3).valid, std::vector<std::string>({"UUU"}));
  auto v32 = classify_chains(3, 2).valid;
  std::sort(v32.begin(), v32.end());
  EXPECT_EQ(v32, std::vector<std::string>({"DD", "UU"}));
  auto v11 = classify_chains(1, 1).valid;
  std::sort(v11.begin(), v11.end());
  EXPECT_EQ(v11, std::vector<std::string>({"D", "U"}));
  for (const auto& t : classify_chains(4, 3).tested) {
    const bool mixed = t.chain.find('U') != std::string::npos && t.chain.find('D') != std::string::npos;
    if (mixed) EXPECT_GT(t.residual, 1e-3) << t.chain;
  }
}

TEST(RepForge, DiscConstantsVanish) {
  const auto ctx = StructureContext::make(1);
  for (int m : {1, 2, 3}) {
    const auto rep = realize(chain(1, Direction::Up, 0, m, -0.8));
    for (int j = 1; j <= m; ++j) {
      const auto c = extract_cj(rep, j, ctx);
      EXPECT_LT(std::abs(c.c), 1e-10);
      EXPECT_LT(c.residual, 1e-10);
    }
  }
}

TEST(RepForge, ScalarShiftsWithLambda) {
  for (int n : {1, 2}) {
    const auto ctx = StructureContext::make(n);
    const auto a = realize(chain(n, Direction::Up, 0, 2, -1.3));
    const auto b = realize(chain(n, Direction::Up, 0, 2, -0.3));
    for (int j = 1; j <= 2; ++j) {
      const auto ca = extract_cj(a, j, ctx), cb = extract_cj(b, j, ctx);
      EXPECT_LT(std::abs(cb.scalar - ca.scalar + 1.0 / (2.0 * n)), 1e-10);
      EXPECT_LT(std::abs(cb.c - ca.c), 1e-10);
    }
  }
}

TEST(RepForge, ConstantsIndependentOfY) {
  const auto ctx = StructureContext::make(2);
  auto s = chain(2, Direction::Up, 1, 3, -1.3);
  const auto base = constants_for(realize(s), ctx);
  s.y = {cplx(0.4, 0.2), 2.0, cplx(0.0, -1.5)};
  const auto other = constants_for(realize(s), ctx);
  for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(base.c[j] - other.c[j]), 1e-10);
}

TEST(RepForge, BothBallTypesAreAffine) {
  const auto ctx = StructureContext::make(2);
  for (const auto& s : {chain(2, Direction::Up, 1, 3, -1.3), chain(2, Direction::Down, 3, 3, -1.3),
                        chain(2, Direction::Down, 4, 3, 0.2)}) {
    const auto t = constants_for(realize(s), ctx);
    ASSERT_TRUE(t.sharp_fit.has_value()) << chain_string(s);
    EXPECT_LT(t.sharp_fit->residual, 1e-9);
  }
}

TEST(RepForge, CartanChainLevels) {
  const auto s = cartan_chain(1, 2, -1.0, {1.0, 1.0});
  const auto rep = realize(s);
  ASSERT_EQ(rep.num_levels(), 3);
  EXPECT_EQ(rep.level_dim(0), 2);
  EXPECT_EQ(rep.level_dim(1), 3);
  EXPECT_EQ(rep.level_dim(2), 4);
  EXPECT_EQ(realize(cartan_chain(2, 0, -1.0, {})).dim, 3);
}

TEST(RepForge, CheckSharp) {
  const auto zero = check_sharp({0.0, 0.0, 0.0});
  ASSERT_TRUE(zero.has_value());
  EXPECT_LT(std::abs(zero->u) + std::abs(zero->v), 1e-15);
  EXPECT_FALSE(check_sharp({0.0, 1.0, 3.0}).has_value());
  const auto fit = check_sharp({0.5, 0.75, 1.0, 1.25});
  ASSERT_TRUE(fit.has_value());
  EXPECT_LT(std::abs(fit->u - 0.5) + std::abs(fit->v - 0.25), 1e-12);
}

TEST(RepForge, CjkTableMatchesGammaRatio) {
  const double u = 0.3, v = 0.2, lambda = -1.1;
  for (int n : {1, 2}) {
    const auto t = cjk_table(u, v, lambda, n, 4);
    ASSERT_TRUE(t.regular);
    for (int k = 0; k <= 4; ++k) {
      EXPECT_EQ(t.cjk(k, k), cplx(1.0));
      for (int j = k + 1; j <= 4; ++j)
        EXPECT_NEAR(std::abs(t.cjk(j, k) - cjk_by_gamma(u, v, lambda, n, j, k)), 0.0,
                    1e-12 * std::abs(t.cjk(j, k)));
    }
    for (int j = 1; j <= 4; ++j) {
      const double first = 1.0 / (u - lambda / (2.0 * n) + (j - 1) * (v + 1.0 / (2.0 * n)));
      EXPECT_NEAR(std::abs(t.cjk(j, j - 1) - first), 0.0, 1e-14);
    }
  }
}

TEST(RepForge, IrregularLambdaIsFlagged) {
  // u = v = 0, n = 2: factor(k=0, i=1) = -lambda / 4 vanishes at lambda = 0.
  const auto t = cjk_table(0.0, 0.0, 0.0, 2, 2);
  EXPECT_FALSE(t.regular);
  ASSERT_FALSE(t.offending.empty());
  EXPECT_EQ(t.offending.front().j, 1);
  EXPECT_EQ(t.offending.front().k, 0);
}
