#include "hbundle/rep_forge.hpp"

#include <cmath>

namespace hbundle {

namespace {

CGProjection disc_projection() {
  CGProjection p;
  p.direction = Direction::Up;
  p.source_k = 0;
  p.target_k = 0;
  p.P = Mat::Identity(1, 1);
  return p;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

BlockSpec to_block_spec(const FiliformSpec& spec) {
  require(spec.m >= 0, Errc::PreconditionViolated, "m must be nonnegative");
  require(static_cast<int>(spec.y.size()) == spec.m, Errc::PreconditionViolated,
          "y must have exactly m entries");
  if (spec.n == 2 && spec.direction == Direction::Down)
    require(spec.m <= spec.k0, Errc::InadmissibleChain, "Down chain needs m <= k0");
  BlockSpec b;
  b.n = spec.n;
  b.lambda0 = spec.lambda0;
  for (int j = 0; j <= spec.m; ++j) {
    int k = 0;
    if (spec.n == 2) k = spec.direction == Direction::Up ? spec.k0 + j : spec.k0 - j;
    b.levels.push_back({{k, 1}});
  }
  for (int j = 1; j <= spec.m; ++j) {
    Mat y(1, 1);
    y(0, 0) = spec.y[j - 1];
    b.links.push_back({j, 0, 0, y});
  }
  return b;
}

int RepRealization::level_offset(int level) const {
  for (const auto& b : blocks)
    if (b.level == level) return b.offset;
  return dim;
}

int RepRealization::level_dim(int level) const {
  int d = 0;
  for (const auto& b : blocks)
    if (b.level == level) d += b.dim;
  return d;
}

Mat RepRealization::rho0(const Mat& k) const {
  require(k.rows() == n + 1 && k.cols() == n + 1, Errc::DimensionMismatch, "k^C element size");
  const Mat a = k.block(0, 0, n, n);
  const cplx d = k(n, n);
  Mat out = Mat::Zero(dim, dim);
  for (const auto& b : blocks) {
    const cplx center = -b.weight * double(n + 1) / double(n) * d;
    const int kd = b.sym_power + 1;
    Mat single = center * Mat::Identity(kd, kd);
    if (n == 2) {
      const Mat a0 = a - (a.trace() / 2.0) * Mat::Identity(2, 2);
      single += sym_rep(b.sym_power, b.weight).ss(a0);
    }
    out.block(b.offset, b.offset, b.dim, b.dim) = kron(Mat::Identity(b.multiplicity, b.multiplicity), single);
  }
  return out;
}

Mat RepRealization::rho0_group(const Mat& k) const {
  require(k.rows() == n + 1 && k.cols() == n + 1, Errc::DimensionMismatch, "K^C element size");
  const cplx delta = k(n, n);
  require(delta.real() > 0.0, Errc::BranchCut, "k-part outside the principal-branch domain");
  const cplx log_delta = std::log(delta);
  Mat out = Mat::Zero(dim, dim);
  for (const auto& b : blocks) {
    const cplx chi = std::exp(-b.weight * double(n + 1) / double(n) * log_delta);
    const int kd = b.sym_power + 1;
    Mat single = chi * Mat::Identity(kd, kd);
    if (n == 2 && b.sym_power > 0) {
      const Mat unimodular = k.block(0, 0, 2, 2) * std::exp(0.5 * log_delta);
      single = chi * sym_power(unimodular, b.sym_power);
    }
    out.block(b.offset, b.offset, b.dim, b.dim) = kron(Mat::Identity(b.multiplicity, b.multiplicity), single);
  }
  return out;
}

Mat RepRealization::rho_minus_at(const Vec& c) const {
  require(c.size() == n, Errc::DimensionMismatch, "p- coordinates");
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i) out += c(i) * rho_minus[i];
  return out;
}

Mat RepRealization::link_operator(int link, int i, bool with_y) const {
  const auto& l = links.at(link);
  const auto& from = blocks[l.from_block];
  const auto& to = blocks[l.to_block];
  Mat out = Mat::Zero(dim, dim);
  const Mat coupling = with_y ? l.link.y : Mat::Identity(to.multiplicity, from.multiplicity);
  out.block(to.offset, from.offset, to.dim, from.dim) = kron(coupling, l.projection.rho_tilde(i));
  return out;
}

RepRealization RepRealization::with_zero_y() const {
  RepRealization r = *this;
  for (auto& l : r.spec.links) l.y.setZero();
  for (auto& l : r.links) l.link.y.setZero();
  if (r.filiform)
    for (auto& y : r.filiform->y) y = 0.0;
  r.rho_minus.assign(n, Mat::Zero(dim, dim));
  return r;
}

RepRealization realize_unchecked(const BlockSpec& spec) {
  require(spec.n == 1 || spec.n == 2, Errc::PreconditionViolated, "n must be 1 or 2");
  require(!spec.levels.empty(), Errc::PreconditionViolated, "at least one level required");
  RepRealization r;
  r.n = spec.n;
  r.lambda0 = spec.lambda0;
  r.spec = spec;
  int offset = 0;
  for (int j = 0; j < static_cast<int>(spec.levels.size()); ++j) {
    for (int c = 0; c < static_cast<int>(spec.levels[j].size()); ++c) {
      const auto& comp = spec.levels[j][c];
      require(comp.sym_power >= 0 && comp.multiplicity >= 1, Errc::PreconditionViolated,
              "invalid level component");
      require(spec.n == 2 || comp.sym_power == 0, Errc::PreconditionViolated,
              "the disc has only trivial k_ss components");
      for (int c2 = 0; c2 < c; ++c2)
        require(spec.levels[j][c2].sym_power != comp.sym_power, Errc::PreconditionViolated,
                "components of a level must be inequivalent");
      FiberBlock b;
      b.level = j;
      b.component = c;
      b.sym_power = comp.sym_power;
      b.multiplicity = comp.multiplicity;
      b.offset = offset;
      b.dim = comp.multiplicity * (comp.sym_power + 1);
      b.weight = spec.lambda0 - j;
      offset += b.dim;
      r.blocks.push_back(b);
    }
  }
  r.dim = offset;
  auto find_block = [&](int level, int comp) {
    for (int i = 0; i < static_cast<int>(r.blocks.size()); ++i)
      if (r.blocks[i].level == level && r.blocks[i].component == comp) return i;
    throw Error(Errc::PreconditionViolated, "link refers to a missing component");
  };
  r.rho_minus.assign(spec.n, Mat::Zero(r.dim, r.dim));
  for (const auto& l : spec.links) {
    require(l.level >= 1 && l.level < static_cast<int>(spec.levels.size()), Errc::PreconditionViolated,
            "link level out of range");
    LinkRealization lr;
    lr.link = l;
    lr.from_block = find_block(l.level - 1, l.from);
    lr.to_block = find_block(l.level, l.to);
    const auto& from = r.blocks[lr.from_block];
    const auto& to = r.blocks[lr.to_block];
    require(l.y.rows() == to.multiplicity && l.y.cols() == from.multiplicity, Errc::DimensionMismatch,
            "y block shape must be m_to x m_from");
    if (spec.n == 1) {
      lr.projection = disc_projection();
    } else {
      if (to.sym_power == from.sym_power + 1) {
        lr.projection = cg_projection(from.sym_power, Direction::Up);
      } else if (from.sym_power >= 1 && to.sym_power == from.sym_power - 1) {
        lr.projection = cg_projection(from.sym_power, Direction::Down);
      } else {
        throw Error(Errc::InadmissibleChain, "Sym^" + std::to_string(to.sym_power) +
                                                 " is not contained in p- (x) Sym^" +
                                                 std::to_string(from.sym_power));
      }
    }
    r.links.push_back(lr);
  }
  for (int link = 0; link < static_cast<int>(r.links.size()); ++link)
    for (int i = 0; i < spec.n; ++i) r.rho_minus[i] += r.link_operator(link, i, true);
  return r;
}

RepRealization realize(const BlockSpec& spec) {
  RepRealization r = realize_unchecked(spec);
  if (r.n == 2) {
    const double res = (r.rho_minus[0] * r.rho_minus[1] - r.rho_minus[1] * r.rho_minus[0]).norm();
    const double scale = 1.0 + r.rho_minus[0].norm() * r.rho_minus[1].norm();
    require(res <= 1e-10 * scale, Errc::InadmissibleChain,
            "rho-(F_1) and rho-(F_2) do not commute (residual " + std::to_string(res) + ")");
  }
  return r;
}

RepRealization realize(const FiliformSpec& spec) {
  for (const auto& y : spec.y)
    require(y != 0.0, Errc::PreconditionViolated, "all y_j must be nonzero");
  RepRealization r = realize(to_block_spec(spec));
  r.filiform = spec;
  return r;
}

ValidationReport validate(const RepRealization& rep, double tol) {
  const auto ctx = StructureContext::make(rep.n);
  ValidationReport out;
  for (const auto& z : ctx.k_basis()) {
    const Mat rz = rep.rho0(z.matrix());
    for (int i = 0; i < rep.n; ++i) {
      const Vec c = minus_coords(bracket(z, ctx.p_minus[i]));
      const Mat lhs = rep.rho_minus_at(c);
      const Mat rhs = rz * rep.rho_minus[i] - rep.rho_minus[i] * rz;
      out.eq1 = std::max(out.eq1, (lhs - rhs).norm());
    }
  }
  if (rep.n == 2)
    out.commutativity = (rep.rho_minus[0] * rep.rho_minus[1] - rep.rho_minus[1] * rep.rho_minus[0]).norm();
  for (int i = 0; i < rep.n; ++i) {
    Mat off = rep.rho_minus[i];
    for (int j = 1; j < rep.num_levels(); ++j)
      off.block(rep.level_offset(j), rep.level_offset(j - 1), rep.level_dim(j), rep.level_dim(j - 1))
          .setZero();
    out.grading = std::max(out.grading, off.norm());
  }
  for (const auto& x : ctx.compact_k_basis()) {
    const Mat r = rep.rho0(x.matrix());
    out.skew_hermitian = std::max(out.skew_hermitian, (r + r.adjoint()).norm());
  }
  out.pass = out.eq1 < tol && out.commutativity < tol && out.grading < tol && out.skew_hermitian < tol;
  return out;
}

ChainClassification classify_chains(int k0, int m, double tol) {
  require(m >= 1, Errc::PreconditionViolated, "m must be at least 1");
  require(k0 >= 0, Errc::PreconditionViolated, "k0 must be nonnegative");
  ChainClassification out;
  out.k0 = k0;
  out.m = m;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::string chain;
    BlockSpec spec;
    spec.n = 2;
    spec.lambda0 = 0.0;
    spec.levels.push_back({{k0, 1}});
    int k = k0;
    bool defined = true;
    for (int j = 1; j <= m; ++j) {
      const bool up = ((mask >> (m - j)) & 1) == 0;
      chain += up ? 'U' : 'D';
      if (!up && k == 0) defined = false;
      k += up ? 1 : -1;
      spec.levels.push_back({{std::max(k, 0), 1}});
      spec.links.push_back({j, 0, 0, Mat::Ones(1, 1)});
    }
    if (!defined) continue;
    const RepRealization r = realize_unchecked(spec);
    ChainResult res;
    res.chain = chain;
    res.residual = (r.rho_minus[0] * r.rho_minus[1] - r.rho_minus[1] * r.rho_minus[0]).norm();
    res.valid = res.residual < tol;
    if (res.valid) out.valid.push_back(chain);
    out.tested.push_back(res);
  }
  return out;
}

CjExtraction extract_cj(const RepRealization& rep, int j, const StructureContext& ctx) {
  require(j >= 1 && j <= static_cast<int>(rep.links.size()), Errc::PreconditionViolated,
          "link index out of range");
  require(ctx.n == rep.n, Errc::DimensionMismatch, "context and realization disagree on n");
  const auto& link = rep.links[j - 1];
  const auto& from = rep.blocks[link.from_block];
  // Irreducible k^C action on the source level, without multiplicity.
  BlockSpec single;
  single.n = rep.n;
  single.lambda0 = from.weight;
  single.levels = {{{from.sym_power, 1}}};
  const RepRealization src = realize_unchecked(single);
  const Mat binv = ctx.pairing().inverse();

  cplx num = 0.0;
  double den = 0.0;
  std::vector<std::pair<Mat, Mat>> pairs;
  for (int yi = 0; yi < rep.n; ++yi) {
    // L(v) = P iota (X -> rho0([Y, X]) v); iota gives t_i = sum_a L(E_a) Binv(i, a).
    const Mat& proj = link.projection.P;
    const int kd = from.sym_power + 1;
    Mat lhs = Mat::Zero(proj.rows(), kd);
    for (int a = 0; a < rep.n; ++a) {
      const Mat act = src.rho0(bracket(ctx.p_minus[yi], ctx.p_plus[a]).matrix());
      for (int i = 0; i < rep.n; ++i) lhs += binv(i, a) * link.projection.rho_tilde(i) * act;
    }
    const Mat rhs = link.projection.rho_tilde(yi);
    num += (rhs.adjoint() * lhs).trace();
    den += rhs.squaredNorm();
    pairs.emplace_back(lhs, rhs);
  }
  require(den > 0.0, Errc::NumericBreakdown, "rho~ vanishes");
  CjExtraction out;
  out.scalar = num / den;
  double res = 0.0, scale = 0.0;
  for (const auto& [lhs, rhs] : pairs) {
    res += (lhs - out.scalar * rhs).squaredNorm();
    scale += lhs.squaredNorm();
  }
  out.residual = std::sqrt(res) / std::max(std::sqrt(scale), 1e-300);
  if (std::sqrt(scale) < 1e-14) out.residual = std::sqrt(res);
  require(out.residual < 1e-10, Errc::NotProportional,
          "P iota rho0([Y,.]) is not proportional to rho~(Y) (residual " + std::to_string(out.residual) + ")");
  out.c = out.scalar + from.weight / (2.0 * rep.n);
  return out;
}

std::optional<SharpFit> check_sharp(const std::vector<cplx>& c, double tol) {
  require(!c.empty(), Errc::PreconditionViolated, "need at least one constant");
  SharpFit fit;
  fit.u = c[0];
  fit.v = c.size() > 1 ? c[1] - c[0] : cplx(0.0);
  for (size_t j = 0; j < c.size(); ++j)
    fit.residual = std::max(fit.residual, std::abs(c[j] - fit.u - double(j) * fit.v));
  if (fit.residual >= tol) return std::nullopt;
  return fit;
}

ConstantsTable cjk_table(cplx u, cplx v, double lambda, int n, int m, double zero_tol) {
  ConstantsTable t;
  t.u = u;
  t.v = v;
  t.lambda = lambda;
  t.n = n;
  t.m = m;
  t.cjk = Mat::Zero(m + 1, m + 1);
  const double inv2n = 1.0 / (2.0 * n);
  for (int k = 0; k <= m; ++k) {
    t.cjk(k, k) = 1.0;
    for (int j = k + 1; j <= m; ++j) {
      cplx prod = 1.0;
      bool ok = true;
      for (int i = 1; i <= j - k; ++i) {
        const cplx factor = u - lambda * inv2n + (2.0 * k + i - 1.0) / 2.0 * (v + inv2n);
        if (std::abs(factor) < zero_tol) {
          ok = false;
          t.regular = false;
          t.offending.push_back({j, k, i, factor});
          continue;
        }
        prod *= factor;
      }
      double fact = 1.0;
      for (int i = 2; i <= j - k; ++i) fact *= i;
      t.cjk(j, k) = ok ? 1.0 / (fact * prod) : cplx(std::nan(""), 0.0);
    }
  }
  return t;
}

ConstantsTable constants_for(const RepRealization& rep, const StructureContext& ctx) {
  require(rep.filiform.has_value(), Errc::PreconditionViolated, "constants_for needs a filiform realization");
  const int m = rep.filiform->m;
  std::vector<cplx> c;
  for (int j = 1; j <= m; ++j) c.push_back(extract_cj(rep, j, ctx).c);
  ConstantsTable t;
  if (m == 0) {
    t = cjk_table(0.0, 0.0, rep.lambda0, rep.n, 0);
    t.sharp_fit = SharpFit{};
  } else {
    const auto fit = check_sharp(c);
    require(fit.has_value(), Errc::PreconditionViolated, "constants are not affine along the chain");
    t = cjk_table(fit->u, fit->v, rep.lambda0, rep.n, m);
    t.sharp_fit = fit;
  }
  t.c = c;
  return t;
}

FiliformSpec cartan_chain(int k0, int m, double lambda0, const std::vector<cplx>& y) {
  FiliformSpec s;
  s.n = 2;
  s.lambda0 = lambda0;
  s.k0 = k0;
  s.m = m;
  s.direction = Direction::Up;
  s.y = y;
  require(static_cast<int>(y.size()) == m, Errc::PreconditionViolated, "y must have m entries");
  for (const auto& v : y) require(v != 0.0, Errc::PreconditionViolated, "y entries must be nonzero");
  return s;
}

std::string chain_string(const FiliformSpec& spec) {
  return std::string(static_cast<size_t>(spec.m), direction_char(spec.direction));
}

}  // namespace hbundle
