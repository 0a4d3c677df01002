#include "hbundle/sections.hpp"

namespace hbundle {

SectionSpace::SectionSpace(int n, int fiber_dim, int max_degree)
    : n_(n), fiber_dim_(fiber_dim), max_degree_(max_degree) {
  require(n == 1 || n == 2, Errc::PreconditionViolated, "n must be 1 or 2");
  require(fiber_dim >= 1 && max_degree >= 0, Errc::PreconditionViolated, "empty section space");
  for (int d = 0; d <= max_degree; ++d) {
    if (n == 1) {
      monomials_.push_back({d, 0});
    } else {
      for (int a = 0; a <= d; ++a) monomials_.push_back({a, d - a});
    }
  }
}

int SectionSpace::monomials_up_to(int d) const {
  if (d < 0) return 0;
  d = std::min(d, max_degree_);
  return n_ == 1 ? d + 1 : (d + 1) * (d + 2) / 2;
}

int SectionSpace::dim_up_to(int d) const { return monomials_up_to(d) * fiber_dim_; }

int SectionSpace::monomial_index(const MultiIndex& alpha) const {
  if (alpha[0] < 0 || alpha[1] < 0) return -1;
  if (n_ == 1) {
    if (alpha[1] != 0 || alpha[0] > max_degree_) return -1;
    return alpha[0];
  }
  const int d = alpha[0] + alpha[1];
  if (d > max_degree_) return -1;
  return monomials_up_to(d - 1) + alpha[0];
}

SpMat SectionSpace::lift(const SpMat& monomial_op, const Mat& fiber_op) const {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int k = 0; k < monomial_op.outerSize(); ++k) {
    for (SpMat::InnerIterator it(monomial_op, k); it; ++it) {
      for (int c = 0; c < fiber_dim_; ++c)
        for (int r = 0; r < fiber_dim_; ++r) {
          const cplx v = it.value() * fiber_op(r, c);
          if (v != 0.0) trips.emplace_back(index(it.row(), r), index(it.col(), c), v);
        }
    }
  }
  SpMat out(dim(), dim());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMat SectionSpace::partial(int i) const {
  require(i >= 0 && i < n_, Errc::PreconditionViolated, "coordinate out of range");
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int m = 0; m < num_monomials(); ++m) {
    MultiIndex a = monomials_[m];
    if (a[i] == 0) continue;
    const double f = a[i];
    --a[i];
    trips.emplace_back(monomial_index(a), m, f);
  }
  SpMat out(num_monomials(), num_monomials());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMat SectionSpace::multiply(int i) const {
  require(i >= 0 && i < n_, Errc::PreconditionViolated, "coordinate out of range");
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int m = 0; m < num_monomials(); ++m) {
    MultiIndex a = monomials_[m];
    ++a[i];
    const int r = monomial_index(a);
    if (r >= 0) trips.emplace_back(r, m, 1.0);
  }
  SpMat out(num_monomials(), num_monomials());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

PolySection PolySection::zero(const SectionSpace& s) {
  PolySection p;
  p.n = s.n();
  p.fiber_dim = s.fiber_dim();
  p.max_degree = s.max_degree();
  p.coeffs = Vec::Zero(s.dim());
  return p;
}

cplx PolySection::coeff(const MultiIndex& alpha, int fiber) const {
  const SectionSpace s = space();
  const int m = s.monomial_index(alpha);
  return m < 0 ? cplx(0.0) : coeffs(s.index(m, fiber));
}

void PolySection::set(const MultiIndex& alpha, int fiber, cplx value) {
  const SectionSpace s = space();
  const int m = s.monomial_index(alpha);
  require(m >= 0, Errc::PreconditionViolated, "multi-index outside the truncation");
  coeffs(s.index(m, fiber)) = value;
}

Vec PolySection::evaluate(const Vec& z) const {
  require(z.size() == n, Errc::DimensionMismatch, "point dimension");
  const SectionSpace s = space();
  Vec out = Vec::Zero(fiber_dim);
  for (int m = 0; m < s.num_monomials(); ++m) {
    const auto& a = s.monomial(m);
    cplx w = std::pow(z(0), a[0]);
    if (n == 2) w *= std::pow(z(1), a[1]);
    out += w * coeffs.segment(s.index(m, 0), fiber_dim);
  }
  return out;
}

std::vector<PolySection> derivative(const PolySection& f) {
  const SectionSpace s = f.space();
  const int lower = std::max(f.max_degree - 1, 0);
  const SectionSpace t(f.n, f.fiber_dim, lower);
  std::vector<PolySection> out;
  for (int i = 0; i < f.n; ++i) {
    PolySection g = PolySection::zero(t);
    for (int m = 0; m < s.num_monomials(); ++m) {
      MultiIndex a = s.monomial(m);
      if (a[i] == 0) continue;
      const double factor = a[i];
      --a[i];
      const int r = t.monomial_index(a);
      g.coeffs.segment(t.index(r, 0), f.fiber_dim) += factor * f.coeffs.segment(s.index(m, 0), f.fiber_dim);
    }
    out.push_back(std::move(g));
  }
  return out;
}

Mat restrict_to_degree(const SectionSpace& s, const Mat& m, int row_degree, int col_degree) {
  return m.topLeftCorner(s.dim_up_to(row_degree), s.dim_up_to(col_degree));
}

}  // namespace hbundle
