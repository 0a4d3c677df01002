#pragma once

#include <random>
#include <string>
#include <vector>

#include "hbundle/lie_core.hpp"
#include "hbundle/rep_forge.hpp"
#include "hbundle/sections.hpp"

namespace hbundle {

/// g = exp(zplus) * kpart * exp(yminus) with kpart = diag(A, delta).
/// yminus holds the F-coordinates of the p- factor.
struct HCFactorization {
  Vec zplus;
  Mat kpart;
  Vec yminus;
};

/// Block LDU factorization on the big cell (lower-right entry nonzero).
HCFactorization hc_factorize(const Mat& g);
Mat reassemble(const HCFactorization& f);

/// exp(z) as an (n+1)x(n+1) matrix, z in p+ coordinates.
Mat exp_plus(const Vec& z);
/// exp(Y) for Y in p- with F-coordinates y.
Mat exp_minus(const Vec& y);

/// g.z = (Az + b) / (cz + d).
Vec mobius(const Mat& g, const Vec& z);

/// rho(b~(g,z)) = rho0(k~(g,z)) exp(rho-(Y(g,z))).
Mat multiplier(const RepRealization& rep, const Mat& g, const Vec& z);

/// pi(X) f = drho(kappa) f - Df(tau), with Ad(exp(-z))X = tau + kappa split into
/// its p+ part tau and its k^C + p- part kappa. Columns of degree max_degree
/// lose the terms that would leave the truncation.
SectionOperator infinitesimal_action(const RepRealization& rep, const LieElement& x, int max_degree);

struct InfinitesimalAction {
  SectionSpace space{2, 1, 0};
  std::vector<LieElement> basis;
  std::vector<SpMat> ops;
};

InfinitesimalAction build_action(const RepRealization& rep, const std::vector<LieElement>& basis,
                                 int max_degree);

/// max ||[pi(X), pi(Y)] - pi([X,Y])|| over basis pairs, on columns of degree <= check_degree.
double homomorphism_residual(const RepRealization& rep, const StructureContext& ctx, int check_degree);

/// exp of a random su(n,1) element with Frobenius norm `radius`.
Mat random_group_element(const StructureContext& ctx, std::mt19937_64& rng, double radius);
/// Uniformly random point in the ball of the given radius.
Vec random_ball_point(int n, std::mt19937_64& rng, double radius);

/// Residuals of a derivative identity at several finite-difference steps.
struct FdCheck {
  std::string name;
  std::vector<double> steps;
  std::vector<double> residuals;
  std::vector<double> orders;  // log10 ratios of consecutive residuals
  double residual = 0.0;       // at the reported step (the last one)
  double order = 0.0;          // from the first two steps
};

inline const std::vector<double> kDefaultSteps = {1e-2, 1e-3, 1e-4};

/// Both derivative identities for k~(g,z) and Y(g,z) along X = E_i.
std::vector<FdCheck> verify_multiplier_derivatives(const RepRealization& rep, const Mat& g, const Vec& z, int i,
                                      const std::vector<double>& steps = kDefaultSteps);

/// Derivative identity for z -> rho0_j(k~(g,z)^{-1}) F(g.z), F supported on level j
/// (0-based, j + 1 must exist), and for z -> rho~(Y(g,z)) on links l, l+1 (0-based).
FdCheck verify_twisted_derivative(const RepRealization& rep, const StructureContext& ctx, int level,
                                  const Mat& g, const Vec& z, const PolySection& f,
                                  const std::vector<double>& steps = kDefaultSteps);
FdCheck verify_link_derivative(const RepRealization& rep, const StructureContext& ctx, int link,
                               const Mat& g, const Vec& z, const std::vector<double>& steps = kDefaultSteps);

struct GammaOperator;

/// max over the basis of ||Gamma pi_0(X) - pi_y(X) Gamma|| on columns of degree <= max_degree - 1.
double verify_intertwining(const GammaOperator& gamma, const InfinitesimalAction& act0,
                           const InfinitesimalAction& acty);

}  // namespace hbundle
