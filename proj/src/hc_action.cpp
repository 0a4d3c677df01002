#include "hbundle/hc_action.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "hbundle/gamma_op.hpp"

namespace hbundle {

HCFactorization hc_factorize(const Mat& g) {
  require(g.rows() == g.cols() && g.rows() >= 2, Errc::DimensionMismatch, "group element must be square");
  const int n = static_cast<int>(g.rows()) - 1;
  const cplx d = g(n, n);
  require(std::abs(d) >= 1e-12, Errc::NotInBigCell, "lower-right pivot vanishes");
  HCFactorization f;
  const Vec b = g.block(0, n, n, 1);
  const Vec c = g.block(n, 0, 1, n).transpose();
  f.zplus = b / d;
  f.yminus = c / d;
  f.kpart = Mat::Zero(n + 1, n + 1);
  f.kpart.block(0, 0, n, n) = g.block(0, 0, n, n) - b * c.transpose() / d;
  f.kpart(n, n) = d;
  return f;
}

Mat exp_plus(const Vec& z) {
  const int n = static_cast<int>(z.size());
  Mat m = Mat::Identity(n + 1, n + 1);
  m.block(0, n, n, 1) = z;
  return m;
}

Mat exp_minus(const Vec& y) {
  const int n = static_cast<int>(y.size());
  Mat m = Mat::Identity(n + 1, n + 1);
  m.block(n, 0, 1, n) = y.transpose();
  return m;
}

Mat reassemble(const HCFactorization& f) { return exp_plus(f.zplus) * f.kpart * exp_minus(f.yminus); }

Vec mobius(const Mat& g, const Vec& z) {
  require(g.rows() == z.size() + 1, Errc::DimensionMismatch, "point dimension");
  return hc_factorize(g * exp_plus(z)).zplus;
}

Mat multiplier(const RepRealization& rep, const Mat& g, const Vec& z) {
  const auto f = hc_factorize(g * exp_plus(z));
  // rho- is nilpotent, so the exponential series terminates.
  const Mat y = rep.rho_minus_at(f.yminus);
  Mat e = Mat::Identity(rep.dim, rep.dim), term = e;
  for (int k = 1; k <= rep.num_levels(); ++k) {
    term = term * y / double(k);
    e += term;
  }
  return rep.rho0_group(f.kpart) * e;
}

SectionOperator infinitesimal_action(const RepRealization& rep, const LieElement& x, int max_degree) {
  const int n = rep.n;
  require(x.ambient() == n + 1, Errc::DimensionMismatch, "Lie element and realization disagree on n");
  const Mat& m = x.matrix();
  const Mat a = m.block(0, 0, n, n);
  const Vec b = m.block(0, n, n, 1);
  const Vec c = m.block(n, 0, 1, n).transpose();
  const cplx d = m(n, n);
  const Mat lin = a - d * Mat::Identity(n, n);

  Mat k0 = Mat::Zero(n + 1, n + 1);
  k0.block(0, 0, n, n) = a;
  k0(n, n) = d;
  const Mat constant_part = rep.rho0(k0) + rep.rho_minus_at(c);
  std::vector<Mat> linear_part;
  for (int k = 0; k < n; ++k) {
    Mat kk = Mat::Zero(n + 1, n + 1);
    kk.block(k, 0, 1, n) = -c.transpose();
    kk(n, n) = c(k);
    linear_part.push_back(rep.rho0(kk));
  }

  const SectionSpace s(n, rep.dim, max_degree);
  const int fd = rep.dim;
  std::vector<Eigen::Triplet<cplx>> trips;
  auto add_fiber = [&](int row_mono, int col_mono, const Mat& f) {
    for (int cc = 0; cc < fd; ++cc)
      for (int r = 0; r < fd; ++r)
        if (f(r, cc) != 0.0) trips.emplace_back(s.index(row_mono, r), s.index(col_mono, cc), f(r, cc));
  };
  auto add_scalar = [&](int row_mono, int col_mono, cplx v) {
    if (row_mono < 0 || v == 0.0) return;
    for (int cc = 0; cc < fd; ++cc) trips.emplace_back(s.index(row_mono, cc), s.index(col_mono, cc), v);
  };
  for (int col = 0; col < s.num_monomials(); ++col) {
    const MultiIndex al = s.monomial(col);
    const int deg = s.degree(col);
    add_fiber(col, col, constant_part);
    for (int k = 0; k < n; ++k) {
      MultiIndex up = al;
      ++up[k];
      const int r = s.monomial_index(up);
      if (r >= 0) {
        add_fiber(r, col, linear_part[k]);
        add_scalar(r, col, double(deg) * c(k));
      }
    }
    for (int i = 0; i < n; ++i) {
      if (al[i] == 0) continue;
      MultiIndex dn = al;
      --dn[i];
      add_scalar(s.monomial_index(dn), col, -double(al[i]) * b(i));
      for (int k = 0; k < n; ++k) {
        MultiIndex sh = dn;
        ++sh[k];
        add_scalar(s.monomial_index(sh), col, -double(al[i]) * lin(i, k));
      }
    }
  }
  SectionOperator out;
  out.matrix = SpMat(s.dim(), s.dim());
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  out.degree_shift = 1;
  return out;
}

InfinitesimalAction build_action(const RepRealization& rep, const std::vector<LieElement>& basis,
                                 int max_degree) {
  InfinitesimalAction act;
  act.space = SectionSpace(rep.n, rep.dim, max_degree);
  act.basis = basis;
  for (const auto& x : basis) act.ops.push_back(infinitesimal_action(rep, x, max_degree).matrix);
  return act;
}

double homomorphism_residual(const RepRealization& rep, const StructureContext& ctx, int check_degree) {
  const int build = check_degree + 2;
  const auto basis = ctx.full_basis();
  const auto act = build_action(rep, basis, build);
  const int cols = act.space.dim_up_to(check_degree);
  double worst = 0.0;
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      const SpMat br = infinitesimal_action(rep, bracket(basis[i], basis[j]), build).matrix;
      const SpMat lhs = act.ops[i] * act.ops[j] - act.ops[j] * act.ops[i] - br;
      worst = std::max(worst, Mat(lhs.leftCols(cols)).norm());
    }
  }
  return worst;
}

Mat random_group_element(const StructureContext& ctx, std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto basis = ctx.compact_basis();
  Mat x = Mat::Zero(ctx.ambient(), ctx.ambient());
  for (const auto& e : basis) x += normal(rng) * e.matrix();
  x *= radius / x.norm();
  return x.exp();
}

Vec random_ball_point(int n, std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Vec z(n);
  for (int i = 0; i < n; ++i) z(i) = cplx(normal(rng), normal(rng));
  const double r = radius * std::pow(uni(rng), 1.0 / (2.0 * n));
  return z * (r / z.norm());
}

namespace {

Vec unit(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

// Central difference of a matrix-valued function along e_i.
template <class F>
Mat central(F&& f, const Vec& z, int i, double h) {
  const Vec e = unit(static_cast<int>(z.size()), i);
  return (f(z + h * e) - f(z - h * e)) / (2.0 * h);
}

void finish(FdCheck& c) {
  c.orders.clear();
  for (size_t k = 0; k + 1 < c.residuals.size(); ++k)
    c.orders.push_back(std::log10(c.residuals[k] / c.residuals[k + 1]) /
                       std::log10(c.steps[k] / c.steps[k + 1]));
  c.residual = c.residuals.back();
  c.order = c.orders.empty() ? 0.0 : c.orders.front();
}

Mat rho0_inverse_kpart(const RepRealization& rep, const Mat& g, const Vec& z) {
  return rep.rho0_group(hc_factorize(g * exp_plus(z)).kpart.inverse());
}

// Sum_i L_i sum_a B^{-1}(i,a) V_a: P iota applied to derivative values.
template <class Get>
Mat contract(const StructureContext& ctx, int n, Get&& link_op, const std::vector<Mat>& partials) {
  const Mat binv = ctx.pairing().inverse();
  Mat out;
  for (int i = 0; i < n; ++i) {
    Mat t = Mat::Zero(partials[0].rows(), partials[0].cols());
    for (int a = 0; a < n; ++a) t += binv(i, a) * partials[a];
    const Mat term = link_op(i) * t;
    out = i == 0 ? term : Mat(out + term);
  }
  return out;
}

}  // namespace

std::vector<FdCheck> verify_multiplier_derivatives(const RepRealization& rep, const Mat& g, const Vec& z, int i,
                                      const std::vector<double>& steps) {
  const int n = rep.n;
  const StructureContext ctx = StructureContext::make(n);
  const auto base = hc_factorize(g * exp_plus(z));
  const LieElement x = ctx.p_plus.at(i);
  const LieElement y = from_minus(base.yminus);
  const Mat tau_inv = rep.rho0_group(base.kpart.inverse());
  const Mat rhs1 = -rep.rho0(bracket(y, x).matrix()) * tau_inv;
  const Mat rhs2 = 0.5 * bracket(y, bracket(y, x)).matrix();

  FdCheck c1{"k_inverse_derivative", steps, {}, {}, 0.0, 0.0};
  FdCheck c2{"y_derivative", steps, {}, {}, 0.0, 0.0};
  for (double h : steps) {
    const Mat lhs1 = central([&](const Vec& p) { return rho0_inverse_kpart(rep, g, p); }, z, i, h);
    const Mat lhs2 = central([&](const Vec& p) { return from_minus(hc_factorize(g * exp_plus(p)).yminus).matrix(); },
                             z, i, h);
    c1.residuals.push_back((lhs1 - rhs1).norm());
    c2.residuals.push_back((lhs2 - rhs2).norm());
  }
  finish(c1);
  finish(c2);
  return {c1, c2};
}

FdCheck verify_twisted_derivative(const RepRealization& rep, const StructureContext& ctx, int level,
                                  const Mat& g, const Vec& z, const PolySection& f,
                                  const std::vector<double>& steps) {
  require(level >= 0 && level + 1 < rep.num_levels() && level < static_cast<int>(rep.links.size()),
          Errc::PreconditionViolated, "level has no outgoing link");
  require(f.fiber_dim == rep.dim && f.n == rep.n, Errc::DimensionMismatch, "section fiber");
  const int n = rep.n;
  auto link_op = [&](int i) { return rep.link_operator(level, i, false); };
  const cplx s = extract_cj(rep, level + 1, ctx).scalar;

  auto phi = [&](const Vec& p) -> Mat {
    return rho0_inverse_kpart(rep, g, p) * f.evaluate(mobius(g, p));
  };
  const auto base = hc_factorize(g * exp_plus(z));
  const Vec gz = base.zplus;
  const Mat tau_next = rep.rho0_group(base.kpart.inverse());
  // (P iota D F)(g.z)
  std::vector<Mat> df;
  for (const auto& part : derivative(f)) df.push_back(part.evaluate(gz));
  const Mat pid_f = contract(ctx, n, link_op, df);
  Mat rho_y = Mat::Zero(rep.dim, rep.dim);
  for (int i = 0; i < n; ++i) rho_y += base.yminus(i) * link_op(i);
  const Mat rhs = -s * rho_y * phi(z) + tau_next * pid_f;

  FdCheck c{"twisted_section_derivative", steps, {}, {}, 0.0, 0.0};
  for (double h : steps) {
    std::vector<Mat> parts;
    for (int a = 0; a < n; ++a) parts.push_back(central(phi, z, a, h));
    c.residuals.push_back((contract(ctx, n, link_op, parts) - rhs).norm());
  }
  finish(c);
  return c;
}

FdCheck verify_link_derivative(const RepRealization& rep, const StructureContext& ctx, int link,
                               const Mat& g, const Vec& z, const std::vector<double>& steps) {
  require(link >= 0 && link + 1 < static_cast<int>(rep.links.size()), Errc::PreconditionViolated,
          "two consecutive links are required");
  const int n = rep.n;
  auto first = [&](int i) { return rep.link_operator(link, i, false); };
  auto second = [&](int i) { return rep.link_operator(link + 1, i, false); };
  const cplx s1 = extract_cj(rep, link + 1, ctx).scalar;
  const cplx s2 = extract_cj(rep, link + 2, ctx).scalar;

  auto rho_first = [&](const Vec& p) -> Mat {
    const Vec y = hc_factorize(g * exp_plus(p)).yminus;
    Mat out = Mat::Zero(rep.dim, rep.dim);
    for (int i = 0; i < n; ++i) out += y(i) * first(i);
    return out;
  };
  const Vec y = hc_factorize(g * exp_plus(z)).yminus;
  Mat r2 = Mat::Zero(rep.dim, rep.dim);
  for (int i = 0; i < n; ++i) r2 += y(i) * second(i);
  const Mat rhs = 0.5 * (s1 - s2) * r2 * rho_first(z);

  FdCheck c{"link_derivative", steps, {}, {}, 0.0, 0.0};
  for (double h : steps) {
    std::vector<Mat> parts;
    for (int a = 0; a < n; ++a) parts.push_back(central(rho_first, z, a, h));
    c.residuals.push_back((contract(ctx, n, second, parts) - rhs).norm());
  }
  finish(c);
  return c;
}

double verify_intertwining(const GammaOperator& gamma, const InfinitesimalAction& act0,
                           const InfinitesimalAction& acty) {
  require(act0.ops.size() == acty.ops.size(), Errc::DimensionMismatch, "actions over different bases");
  require(gamma.space.dim() == act0.space.dim() && act0.space.dim() == acty.space.dim(),
          Errc::DimensionMismatch, "truncations differ");
  const int cols = act0.space.dim_up_to(act0.space.max_degree() - 1);
  const SpMat& g = gamma.op.matrix;
  double worst = 0.0;
  for (size_t k = 0; k < act0.ops.size(); ++k) {
    const SpMat diff = g * act0.ops[k] - acty.ops[k] * g;
    worst = std::max(worst, Mat(diff.leftCols(cols)).norm());
  }
  return worst;
}

}  // namespace hbundle
