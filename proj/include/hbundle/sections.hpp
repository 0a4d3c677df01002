#pragma once

#include <array>
#include <vector>

#include <Eigen/Sparse>

#include "hbundle/common.hpp"

namespace hbundle {

using SpMat = Eigen::SparseMatrix<cplx>;
using MultiIndex = std::array<int, 2>;  // second entry unused for n = 1

/// Truncated space of V-valued polynomials of total degree <= max_degree.
///
/// Index order: degree block, then multi-index in ascending lexicographic
/// order ((0,d), (1,d-1), ..., (d,0) for n = 2), then fiber coordinate
/// (which is itself ordered by level, then by coordinate within the level).
class SectionSpace {
 public:
  SectionSpace(int n, int fiber_dim, int max_degree);

  int n() const { return n_; }
  int fiber_dim() const { return fiber_dim_; }
  int max_degree() const { return max_degree_; }
  int num_monomials() const { return static_cast<int>(monomials_.size()); }
  int dim() const { return num_monomials() * fiber_dim_; }

  const MultiIndex& monomial(int m) const { return monomials_[m]; }
  int degree(int m) const { return monomials_[m][0] + monomials_[m][1]; }
  /// Monomial position, or -1 if alpha is negative or above max_degree.
  int monomial_index(const MultiIndex& alpha) const;
  int index(int monomial, int fiber) const { return monomial * fiber_dim_ + fiber; }
  /// Number of basis sections with degree <= d.
  int dim_up_to(int d) const;
  int monomials_up_to(int d) const;
  /// First index and size of the degree-d block.
  int block_offset(int d) const { return dim_up_to(d - 1); }
  int block_size(int d) const { return dim_up_to(d) - dim_up_to(d - 1); }

  /// M (x) B, where M acts on monomials and B on the fiber.
  SpMat lift(const SpMat& monomial_op, const Mat& fiber_op) const;
  /// Partial derivative d/dz_i on monomials (degree-lowering).
  SpMat partial(int i) const;
  /// Multiplication by z_i on monomials; the top degree is dropped.
  SpMat multiply(int i) const;

 private:
  int n_, fiber_dim_, max_degree_;
  std::vector<MultiIndex> monomials_;
};

/// A V-valued polynomial stored as coefficients over a SectionSpace.
struct PolySection {
  int n = 2;
  int fiber_dim = 1;
  int max_degree = 0;
  Vec coeffs;

  static PolySection zero(const SectionSpace& s);
  SectionSpace space() const { return SectionSpace(n, fiber_dim, max_degree); }
  cplx coeff(const MultiIndex& alpha, int fiber) const;
  void set(const MultiIndex& alpha, int fiber, cplx value);
  /// Evaluates sum_alpha coeff * z^alpha.
  Vec evaluate(const Vec& z) const;
};

/// Formal derivative: one section per E_i, each of degree max_degree - 1.
std::vector<PolySection> derivative(const PolySection& f);

/// Linear operator on a truncated section space.
struct SectionOperator {
  SpMat matrix;
  int degree_shift = 0;
};

/// Keeps only the rows and columns belonging to degrees <= d.
Mat restrict_to_degree(const SectionSpace& s, const Mat& m, int row_degree, int col_degree);

}  // namespace hbundle
