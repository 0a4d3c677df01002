#include "hbundle/cd_pairs.hpp"

#include <algorithm>
#include <limits>

#include "hbundle/rkhs.hpp"

namespace hbundle {

CDPair build_pair(const Mat& gram, const SectionSpace& space) {
  require(gram.rows() == space.dim() && gram.cols() == space.dim(), Errc::DimensionMismatch,
          "Gram does not match the section space");
  Eigen::LLT<Mat> llt(gram);
  require(llt.info() == Eigen::Success, Errc::IndefiniteGram, "Gram matrix is not positive definite");
  CDPair p;
  p.space = space;
  p.gram = gram;
  const Mat id = Mat::Identity(space.fiber_dim(), space.fiber_dim());
  for (int i = 0; i < space.n(); ++i) {
    const Mat m = Mat(space.lift(space.multiply(i), id));
    p.mult.push_back(m);
    p.adjoint.push_back(llt.solve(m.adjoint() * gram));
  }
  return p;
}

KernelDimension joint_kernel_dim(const CDPair& pair, const Vec& w, double tol) {
  const SectionSpace& s = pair.space;
  require(w.size() == s.n(), Errc::DimensionMismatch, "point dimension");
  require(s.max_degree() >= 1, Errc::PreconditionViolated, "truncation degree must be at least 1");
  const int rows = s.dim();
  const int cols = s.dim_up_to(s.max_degree() - 1);
  Eigen::LLT<Mat> big(pair.gram);
  Eigen::LLT<Mat> small(pair.gram.topLeftCorner(cols, cols));
  require(big.info() == Eigen::Success && small.info() == Eigen::Success, Errc::IndefiniteGram,
          "Gram matrix is not positive definite");
  const Mat lu = big.matrixU();    // G = U^* U, orthonormal coordinates x = U f
  const Mat su = small.matrixU();
  Mat stacked(rows, cols * s.n());
  for (int i = 0; i < s.n(); ++i) {
    Mat t = pair.mult[i].leftCols(cols);
    t.topRows(cols) -= w(i) * Mat::Identity(cols, cols);
    // U_d T U_{d-1}^{-1}
    const Mat right = su.adjoint().triangularView<Eigen::Lower>().solve((lu * t).adjoint()).adjoint();
    stacked.middleCols(i * cols, cols) = right;
  }
  Eigen::BDCSVD<Mat> svd(stacked);
  Eigen::VectorXd sv = Eigen::VectorXd::Zero(rows);
  const auto& vals = svd.singularValues();
  for (Eigen::Index i = 0; i < std::min<Eigen::Index>(rows, vals.size()); ++i) sv(i) = vals(i);
  std::vector<double> asc(sv.data(), sv.data() + sv.size());
  std::sort(asc.begin(), asc.end());
  KernelDimension out;
  out.singular_values = asc;
  const double cut = tol * asc.back();
  for (double v : asc)
    if (v < cut) ++out.dimension;
  if (out.dimension == 0 || out.dimension == rows) {
    out.gap_ratio = 0.0;
  } else {
    const double below = asc[out.dimension - 1];
    out.gap_ratio = below > 0.0 ? asc[out.dimension] / below : std::numeric_limits<double>::infinity();
  }
  out.certified = out.dimension > 0 && out.gap_ratio > 1e3;
  return out;
}

HomogeneityReport homogeneity_check(const CDPair& pair, const InfinitesimalAction& act) {
  const SectionSpace& s = pair.space;
  require(act.space.dim() == s.dim(), Errc::DimensionMismatch, "action and pair truncations differ");
  const int n = s.n();
  const int cols = s.dim_up_to(s.max_degree() - 2);
  const Mat id = Mat::Identity(s.dim(), s.dim());
  HomogeneityReport out;
  out.skew_adjoint = skew_adjointness_residual(pair.gram, act);
  for (size_t k = 0; k < act.ops.size(); ++k) {
    const Mat& x = act.basis[k].matrix();
    const Mat a = x.block(0, 0, n, n);
    const Vec b = x.block(0, n, n, 1);
    const Vec c = x.block(n, 0, 1, n).transpose();
    const Mat lin = a - x(n, n) * Mat::Identity(n, n);
    const Mat pi = Mat(act.ops[k]);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      Mat tau = b(i) * id;
      for (int j = 0; j < n; ++j) tau += lin(i, j) * pair.mult[j] - c(j) * pair.mult[i] * pair.mult[j];
      const Mat r = pi * pair.mult[i] - pair.mult[i] * pi + tau;
      worst = std::max(worst, r.leftCols(cols).norm());
    }
    out.per_element_commutation.push_back(worst);
    out.commutation = std::max(out.commutation, worst);
  }
  return out;
}

SimilarityReport similarity_check(const Mat& g0, const Mat& gy, const SectionSpace& space,
                                  const std::vector<int>& degrees) {
  require(g0.rows() == space.dim() && gy.rows() == space.dim(), Errc::DimensionMismatch,
          "Gram matrices do not match the section space");
  SimilarityReport out;
  out.degrees = degrees;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int d : degrees) {
    require(d >= 0 && d <= space.max_degree(), Errc::PreconditionViolated, "degree outside the truncation");
    const int sz = space.dim_up_to(d);
    const Mat a = g0.topLeftCorner(sz, sz), b = gy.topLeftCorner(sz, sz);
    Eigen::LLT<Mat> la(a), lb(b);
    require(la.info() == Eigen::Success && lb.info() == Eigen::Success, Errc::IndefiniteGram,
            "Gram matrix is not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> gen(0.5 * (b + b.adjoint()), 0.5 * (a + a.adjoint()),
                                                      Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    const double mx = gen.eigenvalues().maxCoeff(), mn = gen.eigenvalues().minCoeff();
    out.ratio_max.push_back(mx);
    out.ratio_min.push_back(mn);
    const double cond = std::sqrt(mx / mn);
    out.condition.push_back(cond);
    lo = std::min(lo, cond);
    hi = std::max(hi, cond);
  }
  out.spread = degrees.empty() ? 0.0 : hi / lo;
  // Both spaces carry the same multiplication matrices; the identity map is compared against them literally.
  const Mat id = Mat::Identity(space.fiber_dim(), space.fiber_dim());
  for (int i = 0; i < space.n(); ++i) {
    const Mat m = Mat(space.lift(space.multiply(i), id));
    out.intertwining = std::max(out.intertwining, (m * Mat::Identity(m.rows(), m.cols()) - m).norm());
  }
  return out;
}

}  // namespace hbundle
