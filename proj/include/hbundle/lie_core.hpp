#pragma once

#include <vector>

#include "hbundle/common.hpp"

namespace hbundle {

/// Traceless complex (n+1)x(n+1) matrix, an element of sl(n+1, C).
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(Mat m);
  static LieElement zero(int ambient);

  int ambient() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }

  LieElement operator+(const LieElement& o) const;
  LieElement operator-(const LieElement& o) const;
  LieElement operator*(cplx s) const;
  friend LieElement operator*(cplx s, const LieElement& x) { return x * s; }

 private:
  Mat m_;
};

/// Ground data for su(n,1), n in {1, 2}: the Cartan decomposition
/// g^C = p+ + k^C + p-, the central element zhat and the Killing form scale.
///
/// Conventions: E_i = e_{i,n} spans p+, F_i = e_{n,i} spans p-,
/// zhat = i/(n+1) diag(1,...,1,-n) so that ad(zhat) = +i on p+ and -i on p-.
/// For n = 2, k_ss = sl(2) is spanned by H = diag(1,-1,0), e = e_01, f = e_10.
struct StructureContext {
  int n = 2;
  std::vector<LieElement> p_plus;
  std::vector<LieElement> p_minus;
  std::vector<LieElement> k_ss;  // H, e, f for n = 2; empty for n = 1
  LieElement zhat;
  double killing_scale = 0.0;    // B(X,Y) = killing_scale * tr(XY)

  static StructureContext make(int n);

  int ambient() const { return n + 1; }
  /// k^C basis: k_ss generators followed by zhat.
  std::vector<LieElement> k_basis() const;
  /// p+, k^C, p- in that order; (n+1)^2 - 1 elements.
  std::vector<LieElement> full_basis() const;
  /// Real basis of su(n,1) (fixed points of conj).
  std::vector<LieElement> compact_basis() const;
  /// Real basis of the maximal compact k = u(n) part of su(n,1).
  std::vector<LieElement> compact_k_basis() const;
  /// Antilinear involution fixing su(n,1): X -> -J X^* J, J = diag(1,..,1,-1).
  LieElement conj(const LieElement& x) const;
  /// B(E_a, F_b) as an n x n matrix.
  Mat pairing() const;
};

LieElement bracket(const LieElement& x, const LieElement& y);

/// tr(ad X o ad Y), summed over the elementary basis of gl(n+1).
cplx killing(const LieElement& x, const LieElement& y);

struct CartanParts {
  LieElement plus;
  LieElement zero;
  LieElement minus;
};

CartanParts cartan_components(const LieElement& x);

/// Coordinates of a p+ element in the E_i basis (upper-right column).
Vec plus_coords(const LieElement& x);
/// Coordinates of a p- element in the F_i basis (lower-left row).
Vec minus_coords(const LieElement& x);
LieElement from_plus(const Vec& z);
LieElement from_minus(const Vec& y);

/// iota: Hom(p+, W) -> p- (x) W. The map is given by its values on E_i as
/// the columns of `values` (dim W x n); the result holds the W-factor of
/// F_i in column i.
Mat iota(const StructureContext& ctx, const Mat& values);
/// Contraction against B, the inverse of iota.
Mat iota_inverse(const StructureContext& ctx, const Mat& tensor);

}  // namespace hbundle
