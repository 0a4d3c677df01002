#include "hbundle/rkhs.hpp"

#include <map>
#include <numbers>

namespace hbundle {

Mat ktilde(const Vec& z, const Vec& w) {
  require(z.size() == w.size(), Errc::DimensionMismatch, "points of different dimension");
  const int n = static_cast<int>(z.size());
  const StructureContext ctx = StructureContext::make(n);
  const Mat wbar = ctx.conj(from_plus(w)).matrix();
  const Mat e = Mat::Identity(n + 1, n + 1) - wbar;  // exp(-wbar), wbar nilpotent
  return hc_factorize(e * exp_plus(z)).kpart;
}

Mat ktilde_closed(const Vec& z, const Vec& w) {
  const int n = static_cast<int>(z.size());
  const cplx d = 1.0 - w.dot(z);
  Mat k = Mat::Zero(n + 1, n + 1);
  k.block(0, 0, n, n) = Mat::Identity(n, n) + z * w.adjoint() / d;
  k(n, n) = d;
  return k;
}

double KernelFunction::exponent() const {
  if (n == 1) return 2.0 * lambda;
  return 1.5 * lambda - 0.5 * sigma.sym_power;
}

namespace {

RepRealization single_level(int n, int k, double lambda) {
  BlockSpec b;
  b.n = n;
  b.lambda0 = lambda;
  b.levels = {{{k, 1}}};
  return realize_unchecked(b);
}

}  // namespace

Mat KernelFunction::eval(const Vec& z, const Vec& w) const {
  require(z.size() == n && w.size() == n, Errc::DimensionMismatch, "kernel point dimension");
  return single_level(n, sigma.sym_power, lambda).rho0_group(ktilde(z, w)).inverse();
}

Mat kernel_eval(const KernelFunction& k, const Vec& z, const Vec& w) { return k.eval(z, w); }

Mat kernel_eval(const RepRealization& rep, const Vec& z, const Vec& w) {
  return rep.rho0_group(ktilde(z, w)).inverse();
}

namespace {

// Polynomial in z_1, z_2, wbar_1, wbar_2 with complex coefficients.
struct Series {
  std::map<std::array<int, 4>, cplx> terms;

  Series() = default;
  Series(double v) {
    if (v != 0.0) terms[{0, 0, 0, 0}] = v;
  }
  static Series monomial(int var, cplx coeff) {
    Series s;
    std::array<int, 4> e{0, 0, 0, 0};
    e[var] = 1;
    s.terms[e] = coeff;
    return s;
  }
  friend Series operator+(const Series& x, const Series& y) {
    Series out = x;
    for (const auto& [e, c] : y.terms) out.terms[e] += c;
    return out;
  }
  friend Series operator-(const Series& x, const Series& y) { return x + y * -1.0; }
  friend Series operator*(const Series& x, double s) {
    Series out = x;
    for (auto& [e, c] : out.terms) c *= s;
    return out;
  }
  friend Series operator*(const Series& x, const Series& y) {
    Series out;
    for (const auto& [ex, cx] : x.terms)
      for (const auto& [ey, cy] : y.terms) {
        std::array<int, 4> e;
        for (int i = 0; i < 4; ++i) e[i] = ex[i] + ey[i];
        out.terms[e] += cx * cy;
      }
    return out;
  }
};

// Coefficient matrix of d^p Sym^k(I - z w^*) on the monomial basis up to max_degree.
Mat coefficient_matrix(const KernelFunction& kf, const SectionSpace& s) {
  const int n = kf.n;
  const int k = kf.sigma.sym_power;
  const int fd = k + 1;
  const int top = s.max_degree();
  // Sym^k(I - z w^*): entries have bidegree (r, r) with r <= k.
  std::vector<std::vector<Series>> sym;
  if (n == 1 || k == 0) {
    sym = {{Series(1.0)}};
  } else {
    detail::Small2<Series> m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        m.v[r][c] = Series(r == c ? 1.0 : 0.0) - Series::monomial(r, 1.0) * Series::monomial(2 + c, 1.0);
    sym = sym_power_matrix<Series>(m, k);
  }
  // (1 - t)^p = sum_m a_m t^m, t = sum_i z_i wbar_i.
  Series t;
  for (int i = 0; i < n; ++i) t = t + Series::monomial(i, 1.0) * Series::monomial(2 + i, 1.0);
  const double p = kf.exponent();
  Series scalar(1.0), power(1.0);
  double a = 1.0;
  for (int m = 1; m <= top; ++m) {
    a *= (double(m - 1) - p) / double(m);
    power = power * t;
    scalar = scalar + power * a;
  }
  Mat out = Mat::Zero(s.dim(), s.dim());
  for (int r = 0; r < fd; ++r)
    for (int c = 0; c < fd; ++c) {
      const Series entry = scalar * sym[r][c];
      for (const auto& [e, coeff] : entry.terms) {
        const int row = s.monomial_index({e[0], e[1]});
        const int col = s.monomial_index({e[2], e[3]});
        if (row < 0 || col < 0) continue;
        out(s.index(row, r), s.index(col, c)) += coeff;
      }
    }
  return out;
}

void finalize(GramMatrix& g) {
  const SectionSpace& s = g.space;
  g.gram = Mat::Zero(s.dim(), s.dim());
  g.min_eig.clear();
  g.bad_degrees.clear();
  g.positive = true;
  for (int d = 0; d <= s.max_degree(); ++d) {
    const int off = s.block_offset(d), sz = s.block_size(d);
    const Mat c = g.coefficients.block(off, off, sz, sz);
    const Mat herm = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(herm);
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    g.min_eig.push_back(ev.minCoeff());
    const bool singular = ev.cwiseAbs().minCoeff() <= 1e-12 * scale;
    if (singular || ev.minCoeff() <= 0.0) {
      g.bad_degrees.push_back(d);
      g.positive = false;
    }
    if (singular) {
      g.gram.block(off, off, sz, sz).setConstant(cplx(std::nan(""), 0.0));
    } else {
      g.gram.block(off, off, sz, sz) =
          es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
    }
  }
}

}  // namespace

GramMatrix gram_from_kernel(const KernelFunction& k, int max_degree) {
  GramMatrix g;
  g.space = SectionSpace(k.n, k.fiber_dim(), max_degree);
  g.coefficients = coefficient_matrix(k, g.space);
  finalize(g);
  return g;
}

GramMatrix gram_from_kernel(const RepRealization& rep, int max_degree) {
  GramMatrix g;
  g.space = SectionSpace(rep.n, rep.dim, max_degree);
  g.coefficients = Mat::Zero(g.space.dim(), g.space.dim());
  for (const auto& b : rep.blocks) {
    const KernelFunction kf{rep.n, {b.weight, b.sym_power}, b.weight};
    const SectionSpace single(rep.n, kf.fiber_dim(), max_degree);
    const Mat c = coefficient_matrix(kf, single);
    const int kd = kf.fiber_dim();
    for (int mr = 0; mr < single.num_monomials(); ++mr)
      for (int mc = 0; mc < single.num_monomials(); ++mc)
        for (int copy = 0; copy < b.multiplicity; ++copy)
          for (int r = 0; r < kd; ++r)
            for (int cc = 0; cc < kd; ++cc) {
              const int fr = b.offset + copy * kd + r, fc = b.offset + copy * kd + cc;
              g.coefficients(g.space.index(mr, fr), g.space.index(mc, fc)) = c(single.index(mr, r), single.index(mc, cc));
            }
  }
  finalize(g);
  return g;
}

Mat coefficient_block_fft(const KernelFunction& k, int degree, double radius) {
  const int n = k.n;
  const int fd = k.fiber_dim();
  const int samples = 16;
  const SectionSpace s(n, fd, degree);
  const int off = s.monomials_up_to(degree - 1);
  const int count = s.num_monomials() - off;
  const int grid = n == 1 ? samples : samples * samples;
  auto angle = [&](int idx, int coord) {
    const int a = coord == 0 ? idx % samples : idx / samples;
    return 2.0 * std::numbers::pi * a / samples;
  };
  auto point = [&](int idx) {
    Vec z(n);
    for (int i = 0; i < n; ++i) z(i) = std::polar(radius, angle(idx, i));
    return z;
  };
  Mat out = Mat::Zero(count * fd, count * fd);
  for (int zi = 0; zi < grid; ++zi) {
    const Vec z = point(zi);
    for (int wi = 0; wi < grid; ++wi) {
      const Mat kv = k.eval(z, point(wi));
      for (int a = 0; a < count; ++a) {
        const auto& al = s.monomial(off + a);
        double th = 0.0;
        for (int i = 0; i < n; ++i) th += al[i] * angle(zi, i);
        for (int b = 0; b < count; ++b) {
          const auto& be = s.monomial(off + b);
          double ph = 0.0;
          for (int i = 0; i < n; ++i) ph += be[i] * angle(wi, i);
          const cplx phase = std::polar(1.0, -th + ph);
          out.block(a * fd, b * fd, fd, fd) += phase * kv;
        }
      }
    }
  }
  return out / (double(grid) * grid * std::pow(radius, 2 * degree));
}

ThresholdScan probe_lambda_threshold(int n, int sym_power, const std::vector<double>& lambdas, int max_degree) {
  ThresholdScan scan;
  scan.lambdas = lambdas;
  std::sort(scan.lambdas.begin(), scan.lambdas.end());
  for (double l : scan.lambdas) {
    const auto g = gram_from_kernel(KernelFunction{n, {l, sym_power}, l}, max_degree);
    scan.positive.push_back(g.positive);
    scan.min_eig.push_back(*std::min_element(g.min_eig.begin(), g.min_eig.end()));
    scan.failing_degree.push_back(g.bad_degrees.empty() ? -1 : g.bad_degrees.front());
  }
  bool seen_fail = false;
  for (size_t i = 0; i < scan.positive.size(); ++i) {
    if (!scan.positive[i]) {
      if (!seen_fail && i > 0) scan.bracket = std::make_pair(scan.lambdas[i - 1], scan.lambdas[i]);
      seen_fail = true;
    } else if (seen_fail) {
      scan.monotone = false;
    }
  }
  return scan;
}

Mat pushforward_gram(const Mat& g0, const GammaOperator& gamma) {
  require(g0.rows() == gamma.space.dim(), Errc::DimensionMismatch, "Gram and Gamma truncations differ");
  const Mat inv = Mat(invert_gamma(gamma).op.matrix);
  return inv.adjoint() * g0 * inv;
}

namespace {

double normalized_residual(const Mat& gram, const SpMat& op, int rows) {
  const Mat r = gram * op + Mat(op.adjoint()) * gram;
  Eigen::VectorXd d(rows);
  for (int i = 0; i < rows; ++i) d(i) = 1.0 / std::sqrt(std::abs(gram(i, i).real()));
  return (d.asDiagonal() * r.topLeftCorner(rows, rows) * d.asDiagonal()).norm();
}

}  // namespace

double skew_adjointness_residual(const Mat& gram, const InfinitesimalAction& act) {
  require(gram.rows() == act.space.dim(), Errc::DimensionMismatch, "Gram and action truncations differ");
  const int rows = act.space.dim_up_to(act.space.max_degree() - 1);
  double worst = 0.0;
  for (const auto& op : act.ops) worst = std::max(worst, normalized_residual(gram, op, rows));
  return worst;
}

double gram_k_invariance(const Mat& gram, const RepRealization& rep, const StructureContext& ctx, int max_degree) {
  const auto act = build_action(rep, ctx.compact_k_basis(), max_degree);
  require(gram.rows() == act.space.dim(), Errc::DimensionMismatch, "Gram and action truncations differ");
  double worst = 0.0;
  for (const auto& op : act.ops) worst = std::max(worst, normalized_residual(gram, op, act.space.dim()));
  return worst;
}

std::vector<Vec> radial_shell_points(int n, int count, unsigned seed, double radius) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double shift = uni(rng);
  std::vector<Vec> pts;
  for (int j = 0; j < count; ++j) {
    // Stratified radii with one random shift, uniform in volume.
    const double u = (j + shift) / count;
    const double r = radius * std::pow(u, 1.0 / (2.0 * n));
    Vec z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(normal(rng), normal(rng));
    pts.push_back(z * (r / z.norm()));
  }
  return pts;
}

std::pair<Mat, Mat> difference_kernel_parts(int sym0, Direction dir, double lambda, const std::vector<Vec>& points) {
  const CGProjection proj = cg_projection(sym0, dir);
  const int sym1 = proj.target_k;
  const StructureContext ctx = StructureContext::make(2);
  const Mat binv = ctx.pairing().inverse();
  const KernelFunction k0{2, {lambda, sym0}, lambda};
  const KernelFunction k1{2, {lambda - 1.0, sym1}, lambda - 1.0};
  const int d0 = sym0 + 1, d1 = sym1 + 1;
  const int count = static_cast<int>(points.size());
  Mat a = Mat::Zero(count * d1, count * d1), b = Mat::Zero(count * d1, count * d1);
  for (int p = 0; p < count; ++p) {
    for (int q = 0; q < count; ++q) {
      const Vec& z = points[p];
      const Vec& w = points[q];
      std::vector<cplx> zc{z(0), z(1)}, wc{std::conj(w(0)), std::conj(w(1))};
      const auto kv = k1.eval_closed<cplx>(zc, wc);
      for (int r = 0; r < d1; ++r)
        for (int c = 0; c < d1; ++c) a(p * d1 + r, q * d1 + c) = kv[r][c];
      Mat blk = Mat::Zero(d1, d1);
      for (int za = 0; za < 2; ++za) {
        for (int wb = 0; wb < 2; ++wb) {
          std::vector<HyperDual> zh{HyperDual(z(0)), HyperDual(z(1))};
          std::vector<HyperDual> wh{HyperDual(wc[0]), HyperDual(wc[1])};
          zh[za].b = 1.0;
          wh[wb].c = 1.0;
          const auto hv = k0.eval_closed<HyperDual>(zh, wh);
          Mat mixed(d0, d0);
          for (int r = 0; r < d0; ++r)
            for (int c = 0; c < d0; ++c) mixed(r, c) = hv[r][c].d;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
              const cplx coef = binv(i, za) * std::conj(binv(j, wb));
              if (coef == 0.0) continue;
              blk += coef * proj.rho_tilde(i) * mixed * proj.rho_tilde(j).adjoint();
            }
        }
      }
      b.block(p * d1, q * d1, d1, d1) = blk;
    }
  }
  return {a, b};
}

DifferenceKernelCheck difference_kernel_check(int sym0, Direction dir, double lambda, const std::vector<double>& c_grid,
                                      const std::vector<Vec>& points) {
  const auto [a, b] = difference_kernel_parts(sym0, dir, lambda, points);
  const Mat ah = 0.5 * (a + a.adjoint()), bh = 0.5 * (b + b.adjoint());
  DifferenceKernelCheck out;
  out.c_grid = c_grid;
  for (double c : c_grid) {
    Eigen::SelfAdjointEigenSolver<Mat> es(c * ah - bh, Eigen::EigenvaluesOnly);
    const double m = es.eigenvalues().minCoeff();
    out.min_eig.push_back(m);
    if (!out.minimal_c && m >= -1e-10) out.minimal_c = c;
  }
  Eigen::SelfAdjointEigenSolver<Mat> zero(-bh, Eigen::EigenvaluesOnly);
  out.min_eig_at_zero = zero.eigenvalues().minCoeff();
  out.zero_is_psd = out.min_eig_at_zero >= -1e-10;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> gen(bh, ah, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  out.exact_c = gen.eigenvalues().maxCoeff();
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
  std::vector<double> out;
  const int steps = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade - 1e-9));
  for (int k = 0; k <= steps; ++k) out.push_back(lo * std::pow(10.0, double(k) / per_decade));
  return out;
}

}  // namespace hbundle
