#include "hbundle/lie_core.hpp"

#include <cmath>

namespace hbundle {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InadmissibleChain: return "InadmissibleChain";
    case Errc::NotInBigCell: return "NotInBigCell";
    case Errc::BranchCut: return "BranchCut";
    case Errc::NotProportional: return "NotProportional";
    case Errc::NoSolution: return "NoSolution";
    case Errc::IndefiniteGram: return "IndefiniteGram";
    case Errc::DegenerateKilling: return "DegenerateKilling";
    case Errc::NumericBreakdown: return "NumericBreakdown";
  }
  return "Unknown";
}

LieElement::LieElement(Mat m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), Errc::DimensionMismatch, "Lie element must be square");
  require(std::abs(m_.trace()) <= 1e-14 * (1.0 + m_.norm()) * (1.0 + m_.norm()),
          Errc::PreconditionViolated,
          "Lie element must be traceless");
}

LieElement LieElement::zero(int ambient) { return LieElement(Mat::Zero(ambient, ambient)); }

LieElement LieElement::operator+(const LieElement& o) const {
  require(ambient() == o.ambient(), Errc::DimensionMismatch, "ambient dimension differs");
  return LieElement(m_ + o.m_);
}

LieElement LieElement::operator-(const LieElement& o) const {
  require(ambient() == o.ambient(), Errc::DimensionMismatch, "ambient dimension differs");
  return LieElement(m_ - o.m_);
}

LieElement LieElement::operator*(cplx s) const { return LieElement(m_ * s); }

namespace {

Mat elementary(int dim, int r, int c) {
  Mat e = Mat::Zero(dim, dim);
  e(r, c) = 1.0;
  return e;
}

}  // namespace

StructureContext StructureContext::make(int n) {
  require(n == 1 || n == 2, Errc::PreconditionViolated, "only n = 1 and n = 2 are supported");
  StructureContext ctx;
  ctx.n = n;
  const int d = n + 1;
  for (int i = 0; i < n; ++i) {
    ctx.p_plus.emplace_back(elementary(d, i, n));
    ctx.p_minus.emplace_back(elementary(d, n, i));
  }
  if (n == 2) {
    Mat h = Mat::Zero(d, d);
    h(0, 0) = 1.0;
    h(1, 1) = -1.0;
    ctx.k_ss.emplace_back(h);
    ctx.k_ss.emplace_back(elementary(d, 0, 1));
    ctx.k_ss.emplace_back(elementary(d, 1, 0));
  }
  Mat z = Mat::Zero(d, d);
  for (int i = 0; i < n; ++i) z(i, i) = I_unit / double(n + 1);
  z(n, n) = -I_unit * double(n) / double(n + 1);
  ctx.zhat = LieElement(z);

  const cplx b = killing(ctx.p_plus[0], ctx.p_minus[0]);
  const cplx t = (ctx.p_plus[0].matrix() * ctx.p_minus[0].matrix()).trace();
  ctx.killing_scale = (b / t).real();
  return ctx;
}

std::vector<LieElement> StructureContext::k_basis() const {
  std::vector<LieElement> out = k_ss;
  out.push_back(zhat);
  return out;
}

std::vector<LieElement> StructureContext::full_basis() const {
  std::vector<LieElement> out = p_plus;
  for (const auto& k : k_basis()) out.push_back(k);
  for (const auto& f : p_minus) out.push_back(f);
  return out;
}

std::vector<LieElement> StructureContext::compact_basis() const {
  std::vector<LieElement> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(p_plus[i] + p_minus[i]);
    out.push_back((p_plus[i] - p_minus[i]) * I_unit);
  }
  for (const auto& k : compact_k_basis()) out.push_back(k);
  return out;
}

std::vector<LieElement> StructureContext::compact_k_basis() const {
  std::vector<LieElement> out;
  if (n == 2) {
    out.push_back(k_ss[0] * I_unit);
    out.push_back(k_ss[1] - k_ss[2]);
    out.push_back((k_ss[1] + k_ss[2]) * I_unit);
  }
  out.push_back(zhat);
  return out;
}

LieElement StructureContext::conj(const LieElement& x) const {
  const int d = ambient();
  Mat j = Mat::Identity(d, d);
  j(n, n) = -1.0;
  return LieElement(-j * x.matrix().adjoint() * j);
}

Mat StructureContext::pairing() const {
  Mat b(n, n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) b(a, c) = killing(p_plus[a], p_minus[c]);
  return b;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  require(x.ambient() == y.ambient(), Errc::DimensionMismatch, "bracket of different algebras");
  return LieElement(x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

cplx killing(const LieElement& x, const LieElement& y) {
  require(x.ambient() == y.ambient(), Errc::DimensionMismatch, "killing of different algebras");
  const int d = x.ambient();
  const Mat& a = x.matrix();
  const Mat& b = y.matrix();
  cplx tr = 0.0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      Mat e = elementary(d, r, c);
      Mat inner = b * e - e * b;
      Mat outer = a * inner - inner * a;
      tr += outer(r, c);
    }
  }
  return tr;
}

CartanParts cartan_components(const LieElement& x) {
  const int d = x.ambient();
  const int n = d - 1;
  const Mat& m = x.matrix();
  Mat plus = Mat::Zero(d, d), zero = Mat::Zero(d, d), minus = Mat::Zero(d, d);
  plus.block(0, n, n, 1) = m.block(0, n, n, 1);
  minus.block(n, 0, 1, n) = m.block(n, 0, 1, n);
  zero.block(0, 0, n, n) = m.block(0, 0, n, n);
  zero(n, n) = m(n, n);
  return {LieElement(plus), LieElement(zero), LieElement(minus)};
}

Vec plus_coords(const LieElement& x) {
  const int n = x.ambient() - 1;
  return x.matrix().block(0, n, n, 1);
}

Vec minus_coords(const LieElement& x) {
  const int n = x.ambient() - 1;
  return x.matrix().block(n, 0, 1, n).transpose();
}

LieElement from_plus(const Vec& z) {
  const int n = static_cast<int>(z.size());
  Mat m = Mat::Zero(n + 1, n + 1);
  m.block(0, n, n, 1) = z;
  return LieElement(m);
}

LieElement from_minus(const Vec& y) {
  const int n = static_cast<int>(y.size());
  Mat m = Mat::Zero(n + 1, n + 1);
  m.block(n, 0, 1, n) = y.transpose();
  return LieElement(m);
}

Mat iota(const StructureContext& ctx, const Mat& values) {
  require(values.cols() == ctx.n, Errc::DimensionMismatch, "iota expects one column per E_i");
  // sum_i B(E_a, F_i) t_i = L(E_a)  =>  T = L * B^{-T}
  const Mat b = ctx.pairing();
  Eigen::FullPivLU<Mat> lu(b);
  require(lu.isInvertible(), Errc::DegenerateKilling, "Killing pairing of p+ and p- is degenerate");
  return lu.solve(values.transpose()).transpose();
}

Mat iota_inverse(const StructureContext& ctx, const Mat& tensor) {
  require(tensor.cols() == ctx.n, Errc::DimensionMismatch, "tensor expects one column per F_i");
  return tensor * ctx.pairing().transpose();
}

}  // namespace hbundle
