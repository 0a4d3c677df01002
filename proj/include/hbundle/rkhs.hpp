#pragma once

#include <optional>
#include <vector>

#include "hbundle/gamma_op.hpp"
#include "hbundle/hc_action.hpp"
#include "hbundle/rep_forge.hpp"
#include "hbundle/sections.hpp"
#include "hbundle/sl2_cg.hpp"

namespace hbundle {

/// k-part of exp(-conj(w)) exp(z), by the generic factorization.
Mat ktilde(const Vec& z, const Vec& w);
/// Closed form: diag(I + z w^* / d, d) with d = 1 - w^* z.
Mat ktilde_closed(const Vec& z, const Vec& w);

/// Invariant kernel of chi_lambda (x) sigma on the ball of dimension n:
/// K(z,w) = rho0(K~(z,w))^{-1}, which equals d^p Sym^k(I - z w^*) with
/// d = 1 - w^* z and p = lambda (n+1)/n - k/2.
struct KernelFunction {
  int n = 2;
  IrrepSpec sigma;
  double lambda = 0.0;

  int fiber_dim() const { return sigma.sym_power + 1; }
  double exponent() const;
  /// Through hc_factorize and the group-level rho0.
  Mat eval(const Vec& z, const Vec& w) const;
  /// Through the closed form; T is cplx or a dual-number type.
  template <class T>
  std::vector<std::vector<T>> eval_closed(const std::vector<T>& z, const std::vector<T>& wbar) const;
};

Mat kernel_eval(const KernelFunction& k, const Vec& z, const Vec& w);

/// Kernel of the direct-sum bundle of a realization (all y set to 0).
Mat kernel_eval(const RepRealization& rep, const Vec& z, const Vec& w);

/// Degree-blocked coefficient and Gram matrices over the monomial section basis.
struct GramMatrix {
  SectionSpace space{2, 1, 0};
  Mat gram;          // full matrix, block diagonal in degree for kernel Grams
  Mat coefficients;  // Taylor coefficients C with K(z,w) = sum C_{(a,u),(b,v)} z^a conj(w)^b
  std::vector<double> min_eig;  // per degree, of the coefficient block
  std::vector<int> bad_degrees;  // non-positive or singular blocks
  bool positive = true;
};

/// Exact series extraction of the Taylor coefficients, then blockwise inversion.
GramMatrix gram_from_kernel(const RepRealization& rep, int max_degree);
GramMatrix gram_from_kernel(const KernelFunction& k, int max_degree);

/// Coefficient block of one degree, by a discrete Fourier transform of the
/// kernel on a torus (the independent route used for cross-checks).
Mat coefficient_block_fft(const KernelFunction& k, int degree, double radius = 0.25);

struct ThresholdScan {
  std::vector<double> lambdas;
  std::vector<bool> positive;
  std::vector<double> min_eig;
  std::vector<int> failing_degree;  // -1 when positive
  bool monotone = true;
  std::optional<std::pair<double, double>> bracket;  // last positive, first failing
};

ThresholdScan probe_lambda_threshold(int n, int sym_power, const std::vector<double>& lambdas, int max_degree);

/// G_y = Gamma^{-*} G_0 Gamma^{-1}. Block diagonal in degree + level.
Mat pushforward_gram(const Mat& g0, const GammaOperator& gamma);

/// max over X in su(n,1) of ||D(G pi(X) + pi(X)^* G)D|| on degrees <= max_degree - 1,
/// with D = diag(G)^{-1/2}.
double skew_adjointness_residual(const Mat& gram, const InfinitesimalAction& act);

/// max over compact k_ss generators of the commutator of the Gram with the action.
double gram_k_invariance(const Mat& gram, const RepRealization& rep, const StructureContext& ctx, int max_degree);

/// Low-discrepancy radial-shell points strictly inside the given radius.
std::vector<Vec> radial_shell_points(int n, int count, unsigned seed, double radius = 0.8);

struct DifferenceKernelCheck {
  std::vector<double> c_grid;
  std::vector<double> min_eig;          // of the sample Gram at each C
  std::optional<double> minimal_c;      // first grid C with min_eig >= -1e-10
  double exact_c = 0.0;                 // largest generalized eigenvalue
  double min_eig_at_zero = 0.0;
  bool zero_is_psd = false;
};

/// Sample form of C K_{s1,lambda-1} - (P iota D^z) K_{s0,lambda} (P iota D^w)^*.
DifferenceKernelCheck difference_kernel_check(int sym0, Direction dir, double lambda, const std::vector<double>& c_grid,
                                      const std::vector<Vec>& points);

/// The two kernels evaluated on a point set, as the (N dim V1)^2 Gram matrices.
std::pair<Mat, Mat> difference_kernel_parts(int sym0, Direction dir, double lambda, const std::vector<Vec>& points);

std::vector<double> geometric_grid(double lo, double hi, int per_decade);

}  // namespace hbundle

#include "hbundle/rkhs_impl.hpp"
