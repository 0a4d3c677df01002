#include "hbundle/gamma_op.hpp"

#include <unordered_map>

namespace hbundle {

SpMat p_iota_d(const RepRealization& rep, const StructureContext& ctx, int link, bool with_y,
               const SectionSpace& space) {
  require(link >= 0 && link < static_cast<int>(rep.links.size()), Errc::PreconditionViolated,
          "link index out of range");
  require(space.fiber_dim() == rep.dim && space.n() == rep.n, Errc::DimensionMismatch,
          "section space does not match the realization");
  const Mat binv = ctx.pairing().inverse();
  SpMat out(space.dim(), space.dim());
  for (int i = 0; i < rep.n; ++i) {
    SpMat t(space.num_monomials(), space.num_monomials());
    for (int a = 0; a < rep.n; ++a) t += binv(i, a) * space.partial(a);
    out += space.lift(t, rep.link_operator(link, i, with_y));
  }
  return out;
}

PolySection p_iota_d(const RepRealization& rep, const StructureContext& ctx, int level, const PolySection& f) {
  require(level >= 0 && level + 1 < rep.num_levels(), Errc::PreconditionViolated, "level out of range");
  const SectionSpace s = f.space();
  PolySection out = PolySection::zero(s);
  for (int l = 0; l < static_cast<int>(rep.links.size()); ++l) {
    if (rep.links[l].link.level != level + 1) continue;
    out.coeffs += p_iota_d(rep, ctx, l, false, s) * f.coeffs;
  }
  return out;
}

std::vector<LinkPath> link_paths(const RepRealization& rep) {
  std::vector<LinkPath> out;
  std::vector<LinkPath> frontier;
  for (int l = 0; l < static_cast<int>(rep.links.size()); ++l)
    frontier.push_back({{l}, rep.links[l].link.level - 1, rep.links[l].link.level});
  while (!frontier.empty()) {
    std::vector<LinkPath> next;
    for (const auto& p : frontier) {
      out.push_back(p);
      const int end_block = rep.links[p.links.back()].to_block;
      for (int l = 0; l < static_cast<int>(rep.links.size()); ++l) {
        if (rep.links[l].from_block != end_block) continue;
        LinkPath q = p;
        q.links.push_back(l);
        q.to_level = rep.links[l].link.level;
        next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

namespace {

SpMat path_operator(const std::vector<SpMat>& link_ops, const LinkPath& p, int dim) {
  SpMat out(dim, dim);
  out.setIdentity();
  for (int l : p.links) out = SpMat(link_ops[l] * out);
  return out;
}

std::vector<SpMat> all_link_ops(const RepRealization& rep, const StructureContext& ctx, const SectionSpace& s) {
  std::vector<SpMat> ops;
  for (int l = 0; l < static_cast<int>(rep.links.size()); ++l) ops.push_back(p_iota_d(rep, ctx, l, true, s));
  return ops;
}

}  // namespace

GammaOperator assemble_gamma(const RepRealization& rep, const StructureContext& ctx,
                             const std::vector<LinkPath>& paths, const std::vector<cplx>& constants,
                             int max_degree) {
  require(paths.size() == constants.size(), Errc::DimensionMismatch, "one constant per path");
  GammaOperator g;
  g.space = SectionSpace(rep.n, rep.dim, max_degree);
  g.paths = paths;
  g.constants = constants;
  g.num_levels = rep.num_levels();
  const auto ops = all_link_ops(rep, ctx, g.space);
  SpMat m(g.space.dim(), g.space.dim());
  m.setIdentity();
  for (size_t p = 0; p < paths.size(); ++p)
    if (constants[p] != 0.0) m += constants[p] * path_operator(ops, paths[p], g.space.dim());
  m.prune(cplx(0.0));
  g.op.matrix = m;
  g.op.degree_shift = 0;
  return g;
}

GammaOperator build_gamma(const RepRealization& rep, const StructureContext& ctx, const Mat& cjk, int max_degree) {
  const int levels = rep.num_levels();
  require(cjk.rows() >= levels && cjk.cols() >= levels, Errc::DimensionMismatch, "constants table too small");
  std::vector<LinkPath> paths = link_paths(rep);
  std::vector<cplx> constants;
  for (const auto& p : paths) constants.push_back(cjk(p.to_level, p.from_level));
  return assemble_gamma(rep, ctx, paths, constants, max_degree);
}

GammaOperator build_gamma(const RepRealization& rep, const StructureContext& ctx, const ConstantsTable& table,
                          int max_degree) {
  if (!table.regular) {
    std::string what = "irregular lambda; vanishing factors at (j,k,i) =";
    for (const auto& o : table.offending)
      what += " (" + std::to_string(o.j) + "," + std::to_string(o.k) + "," + std::to_string(o.i) + ")";
    throw Error(Errc::PreconditionViolated, what);
  }
  return build_gamma(rep, ctx, table.cjk, max_degree);
}

GammaOperator invert_gamma(const GammaOperator& gamma) {
  const int dim = gamma.space.dim();
  SpMat id(dim, dim);
  id.setIdentity();
  const SpMat nil = gamma.op.matrix - id;
  SpMat inv = id, term = id;
  for (int k = 1; k < gamma.num_levels; ++k) {
    term = SpMat(-(nil * term));
    inv += term;
  }
  inv.prune(cplx(0.0));
  GammaOperator out = gamma;
  out.op.matrix = inv;
  // The inverse is of the same path form, but its constants are not tracked.
  out.constants.assign(gamma.constants.size(), cplx(std::nan(""), 0.0));
  return out;
}

BlockGammaSolution solve_block_gamma(const RepRealization& rep, const StructureContext& ctx, int max_degree,
                                     double tol, bool throw_on_failure) {
  require(max_degree >= 1, Errc::PreconditionViolated, "max_degree must be at least 1");
  const RepRealization zero = rep.with_zero_y();
  const SectionSpace space(rep.n, rep.dim, max_degree);
  std::vector<LieElement> gens = ctx.p_plus;
  for (const auto& f : ctx.p_minus) gens.push_back(f);
  gens.push_back(ctx.zhat);
  const auto act0 = build_action(zero, gens, max_degree);
  const auto acty = build_action(rep, gens, max_degree);

  const auto paths = link_paths(rep);
  const auto ops = all_link_ops(rep, ctx, space);
  std::vector<SpMat> path_ops;
  for (const auto& p : paths) path_ops.push_back(path_operator(ops, p, space.dim()));

  const int cols = space.dim_up_to(max_degree - 1);
  const int unknowns = static_cast<int>(paths.size());
  // Equations are indexed by (generator, row, column) of nonzero entries.
  std::unordered_map<long long, int> row_of;
  std::vector<std::vector<std::pair<int, cplx>>> rows;  // per equation: (unknown or -1 for rhs, value)
  auto key = [&](size_t g, int r, int c) {
    return (static_cast<long long>(g) * space.dim() + r) * space.dim() + c;
  };
  auto accumulate = [&](size_t g, const SpMat& m, int unknown) {
    const SpMat block = m.leftCols(cols);
    for (int k = 0; k < block.outerSize(); ++k) {
      for (SpMat::InnerIterator it(block, k); it; ++it) {
        if (it.value() == 0.0) continue;
        const long long id = key(g, static_cast<int>(it.row()), static_cast<int>(it.col()));
        auto [pos, inserted] = row_of.try_emplace(id, static_cast<int>(rows.size()));
        if (inserted) rows.emplace_back();
        rows[pos->second].emplace_back(unknown, it.value());
      }
    }
  };
  for (size_t g = 0; g < gens.size(); ++g) {
    accumulate(g, acty.ops[g] - act0.ops[g], -1);
    for (int p = 0; p < unknowns; ++p)
      accumulate(g, SpMat(path_ops[p] * act0.ops[g] - acty.ops[g] * path_ops[p]), p);
  }

  BlockGammaSolution out;
  out.unknowns = unknowns;
  Vec sol = Vec::Zero(unknowns);
  if (unknowns > 0 && !rows.empty()) {
    Mat a = Mat::Zero(static_cast<Eigen::Index>(rows.size()), unknowns);
    Vec rhs = Vec::Zero(static_cast<Eigen::Index>(rows.size()));
    for (size_t r = 0; r < rows.size(); ++r)
      for (const auto& [u, v] : rows[r]) {
        if (u < 0)
          rhs(r) += v;
        else
          a(r, u) += v;
      }
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
    cod.setThreshold(1e-10);
    out.rank = static_cast<int>(cod.rank());
    sol = cod.solve(rhs);
    const double scale = std::max(rhs.norm(), 1e-300);
    out.residual = (a * sol - rhs).norm() / scale;
  }
  out.nullity = unknowns - out.rank;
  out.underdetermined = out.nullity > 0;
  std::vector<cplx> constants(sol.data(), sol.data() + sol.size());
  out.gamma = assemble_gamma(rep, ctx, paths, constants, max_degree);
  const auto full = ctx.full_basis();
  out.verify_residual = verify_intertwining(out.gamma, build_action(zero, full, max_degree),
                                            build_action(rep, full, max_degree));
  out.solved = out.residual < tol;
  if (!out.solved && throw_on_failure)
    throw Error(Errc::NoSolution, "intertwining equations are inconsistent (relative residual " +
                                      std::to_string(out.residual) + ")");
  return out;
}

}  // namespace hbundle
