#include "hbundle/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "hbundle/cd_pairs.hpp"
#include "hbundle/gamma_op.hpp"
#include "hbundle/hc_action.hpp"
#include "hbundle/rkhs.hpp"

namespace hbundle {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    SuiteConfig, schema_version, chain_lambda, chain_k0, chain_m, chain_y, structure_tol, cg_max_k,
    cg_equivariance_tol, cg_coisometry_tol, classify_k0, classify_m, mixed_min_residual, fit_lambdas, fit_tol,
    disc_tol, fd_seed, fd_samples, fd_group_radius, fd_point_radius, fd_tol, fd_min_order, intertwining_degree,
    intertwining_lambdas, intertwining_tol, perturbation, negative_control_min, homomorphism_degree,
    homomorphism_tol, pochhammer_nu, kernel_max_degree, pochhammer_tol, invariance_tol, threshold_sym_powers,
    threshold_lo, threshold_hi, threshold_step, unitarity_degree, unitarity_tol, diff_seeds, diff_points,
    diff_lambda, diff_c_lo, diff_c_hi, diff_per_decade, psd_tol, stability_factor, cd_degree, cd_radii,
    kernel_dim_tol, homogeneity_tol, similarity_degrees)

Json to_json(const SuiteConfig& c) {
  const nlohmann::json plain = c;
  return Json(plain);
}

SuiteConfig suite_config_from_json(const Json& j) {
  SuiteConfig c;
  try {
    const nlohmann::json plain(j);
    plain.get_to(c);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::PreconditionViolated, std::string("bad suite config: ") + e.what());
  }
  return c;
}

FiliformSpec default_chain(const SuiteConfig& c) {
  FiliformSpec s;
  s.n = 2;
  s.lambda0 = c.chain_lambda;
  s.k0 = c.chain_k0;
  s.m = c.chain_m;
  for (const auto& y : c.chain_y) s.y.emplace_back(y[0], y[1]);
  return s;
}

std::vector<double> lambda_grid(double lo, double hi, double step) {
  require(step > 0.0 && hi >= lo, Errc::PreconditionViolated, "empty lambda grid");
  std::vector<double> out;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i <= count; ++i) out.push_back(lo + i * step);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

CheckRecord record(std::string name, std::string anchor) {
  CheckRecord r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  return r;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

cplx random_cplx(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

std::vector<cplx> chain_y(int m, int variant) {
  std::vector<cplx> y;
  for (int j = 0; j < m; ++j)
    y.push_back(variant == 0 ? cplx(1.0 + 0.3 * j, 0.2 * j) : cplx(0.4 - 0.5 * j, 0.9 + 0.1 * j));
  return y;
}

FiliformSpec chain(int n, Direction dir, int k0, int m, double lambda, int y_variant = 0) {
  FiliformSpec s;
  s.n = n;
  s.direction = dir;
  s.k0 = k0;
  s.m = m;
  s.lambda0 = lambda;
  s.y = chain_y(m, y_variant);
  return s;
}

std::string chain_label(const FiliformSpec& s) {
  return "n" + std::to_string(s.n) + "_" + chain_string(s) + "_k0_" + std::to_string(s.k0);
}

Mat perturbed(const ConstantsTable& t, double eps) {
  Mat c = t.cjk;
  c(1, 0) *= 1.0 + eps;
  return c;
}

// ---------------------------------------------------------------- 1

CriterionOutcome structure(const SuiteConfig& cfg) {
  CriterionOutcome out;
  double jac = 0, grading = 0, split = 0, sym = 0, inv = 0, trace = 0, conj_inv = 0, real_fixed = 0, iota_rt = 0;
  Json b11 = Json::object();
  std::mt19937_64 rng(1);
  for (int n : {1, 2}) {
    const auto ctx = StructureContext::make(n);
    const auto basis = ctx.full_basis();
    for (const auto& x : basis)
      for (const auto& y : basis)
        for (const auto& z : basis) {
          const auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
          jac = std::max(jac, j.matrix().norm());
          inv = std::max(inv, std::abs(killing(bracket(z, x), y) + killing(x, bracket(z, y))));
        }
    for (const auto& x : ctx.p_plus)
      grading = std::max(grading, (bracket(ctx.zhat, x) - I_unit * x).matrix().norm());
    for (const auto& x : ctx.k_basis()) grading = std::max(grading, bracket(ctx.zhat, x).matrix().norm());
    for (const auto& x : ctx.p_minus)
      grading = std::max(grading, (bracket(ctx.zhat, x) + I_unit * x).matrix().norm());
    for (const auto& x : basis)
      for (const auto& y : basis) {
        sym = std::max(sym, std::abs(killing(x, y) - killing(y, x)));
        trace = std::max(trace, std::abs(killing(x, y) - ctx.killing_scale * (x.matrix() * y.matrix()).trace()));
      }
    for (int t = 0; t < 8; ++t) {
      LieElement x = LieElement::zero(n + 1);
      for (const auto& e : basis) x = x + random_cplx(rng) * e;
      const auto parts = cartan_components(x);
      split = std::max(split, (parts.plus + parts.zero + parts.minus - x).matrix().norm());
      split = std::max(split, (cartan_components(parts.plus).plus - parts.plus).matrix().norm());
      split = std::max(split, (cartan_components(parts.minus).minus - parts.minus).matrix().norm());
      conj_inv = std::max(conj_inv, (ctx.conj(ctx.conj(x)) - x).matrix().norm());
    }
    for (const auto& x : ctx.compact_basis()) real_fixed = std::max(real_fixed, (ctx.conj(x) - x).matrix().norm());
    for (int w = 1; w <= 8; ++w) {
      Mat values(w, n);
      for (int r = 0; r < w; ++r)
        for (int c = 0; c < n; ++c) values(r, c) = random_cplx(rng);
      iota_rt = std::max(iota_rt, (iota_inverse(ctx, iota(ctx, values)) - values).norm());
    }
    b11["n" + std::to_string(n)] = to_json(killing(ctx.p_plus[0], ctx.p_minus[0]));
  }
  const double tol = cfg.structure_tol;
  auto add = [&](std::string name, std::string anchor, Json values, bool ok) {
    auto r = record("c01." + std::move(name), std::move(anchor));
    r.inputs = {{"n", {1, 2}}, {"tol", tol}};
    r.values = std::move(values);
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    out.records.push_back(std::move(r));
  };
  add("jacobi", "Jacobi identity on all basis triples", {{"max_residual", jac}}, jac < tol);
  add("zhat_grading", "ad(zhat) is i on p+, 0 on k^C, -i on p-", {{"max_residual", grading}}, grading < tol);
  add("cartan_split", "X = X+ + X0 + X- with idempotent projections", {{"max_residual", split}}, split < tol);
  add("killing", "Killing form symmetric, ad-invariant, proportional to the trace form",
      {{"symmetry", sym}, {"invariance", inv}, {"trace_form", trace}, {"B_E1_F1", b11}},
      sym < tol && inv < tol && trace < tol);
  add("conjugation", "conjugation is an involution fixing su(n,1)",
      {{"involution", conj_inv}, {"real_form_fixed", real_fixed}}, conj_inv < tol && real_fixed < tol);
  add("iota_round_trip", "contraction against B inverts iota on Hom(p+, W), dim W <= 8",
      {{"max_residual", iota_rt}}, iota_rt < tol);
  out.time_limit = 1.0;
  return out;
}

// ---------------------------------------------------------------- 2

CriterionOutcome clebsch_gordan(const SuiteConfig& cfg) {
  CriterionOutcome out;
  const auto ctx = StructureContext::make(2);
  double equiv = 0, coiso = 0, relations = 0;
  std::vector<int> dims;
  bool dims_ok = true, split_ok = true;
  for (int k = 0; k <= cfg.cg_max_k; ++k) {
    const auto rep = sym_rep(k, 0.0);
    relations = std::max({relations, (rep.H * rep.E - rep.E * rep.H - 2.0 * rep.E).norm(),
                          (rep.H * rep.F - rep.F * rep.H + 2.0 * rep.F).norm(),
                          (rep.E * rep.F - rep.F * rep.E - rep.H).norm()});
    const auto parts = decompose_tensor(k);
    int total = 0;
    for (int p : parts) total += p + 1;
    split_ok = split_ok && total == 2 * (k + 1);
    for (Direction dir : {Direction::Up, Direction::Down}) {
      if (dir == Direction::Down && k == 0) continue;
      const int target = dir == Direction::Up ? k + 1 : k - 1;
      const auto p = cg_projection(k, dir);
      const auto trep = sym_rep(target, 0.0);
      for (const auto& x : ctx.k_ss) {
        Mat ad(2, 2);
        for (int i = 0; i < 2; ++i) {
          Vec e = Vec::Zero(2);
          e(i) = 1.0;
          ad.col(i) = minus_coords(bracket(x, from_minus(e)));
        }
        const Mat block = x.matrix().topLeftCorner(2, 2);
        const Mat lhs = p.P * (kron(ad, Mat::Identity(k + 1, k + 1)) + kron(Mat::Identity(2, 2), rep.ss(block)));
        equiv = std::max(equiv, (lhs - trep.ss(block) * p.P).norm());
      }
      coiso = std::max(coiso, (p.P * p.P.adjoint() - Mat::Identity(target + 1, target + 1)).norm());
      const int d = equivariant_map_dimension(k, target);
      dims.push_back(d);
      dims_ok = dims_ok && d == 1;
    }
  }
  auto r = record("c02.equivariance", "P (ad (x) 1 + 1 (x) rho(X)) = rho'(X) P for X in k_ss, k <= max_k");
  r.inputs = {{"max_k", cfg.cg_max_k}, {"tol", cfg.cg_equivariance_tol}};
  r.values = {{"max_residual", equiv}, {"sl2_relations", relations}};
  r.verdict = all_of({equiv < cfg.cg_equivariance_tol, relations < cfg.cg_equivariance_tol});
  out.records.push_back(r);
  r = record("c02.multiplicity_one", "equivariant maps p- (x) Sym^k -> Sym^(k+-1) form a line");
  r.inputs = {{"max_k", cfg.cg_max_k}, {"order", "k ascending, Up then Down"}};
  r.values = {{"dimensions", dims}, {"tensor_dimensions_add_up", split_ok}};
  r.verdict = all_of({dims_ok, split_ok});
  out.records.push_back(r);
  r = record("c02.coisometry", "P P^* = identity on the target");
  r.inputs = {{"max_k", cfg.cg_max_k}, {"tol", cfg.cg_coisometry_tol}};
  r.values = {{"max_residual", coiso}};
  r.verdict = below(coiso, cfg.cg_coisometry_tol);
  out.records.push_back(r);
  out.time_limit = 5.0;
  return out;
}

// ---------------------------------------------------------------- 3

CriterionOutcome chain_types(const SuiteConfig& cfg) {
  CriterionOutcome out;
  for (int k0 : cfg.classify_k0)
    for (int m : cfg.classify_m) {
      const auto c = classify_chains(k0, m);
      std::set<std::string> expected = {std::string(m, 'U')};
      if (m <= k0) expected.insert(std::string(m, 'D'));
      const std::set<std::string> got(c.valid.begin(), c.valid.end());
      double mixed = std::numeric_limits<double>::infinity();
      Json residuals = Json::object();
      for (const auto& t : c.tested) {
        residuals[t.chain] = t.residual;
        const bool uniform = t.chain == std::string(m, 'U') || t.chain == std::string(m, 'D');
        if (!uniform) mixed = std::min(mixed, t.residual);
      }
      auto r = record("c03.k0_" + std::to_string(k0) + "_m_" + std::to_string(m),
                      "only all-up and all-down chains give a commuting rho-");
      r.inputs = {{"k0", k0}, {"m", m}, {"mixed_threshold", cfg.mixed_min_residual}};
      r.values = {{"valid", c.valid},
                  {"expected", std::vector<std::string>(expected.begin(), expected.end())},
                  {"commutator_residuals", residuals},
                  {"min_mixed_residual", mixed}};
      r.verdict = all_of({got == expected, mixed > cfg.mixed_min_residual});
      out.records.push_back(r);
    }
  out.time_limit = 10.0;
  return out;
}

// ---------------------------------------------------------------- 4, 5

std::vector<FiliformSpec> fit_chains(double lambda, int y_variant) {
  return {chain(1, Direction::Up, 0, 3, lambda, y_variant), chain(2, Direction::Up, 0, 3, lambda, y_variant),
          chain(2, Direction::Up, 1, 3, lambda, y_variant), chain(2, Direction::Down, 3, 3, lambda, y_variant),
          chain(2, Direction::Down, 4, 3, lambda, y_variant)};
}

CriterionOutcome affine_constants(const SuiteConfig& cfg) {
  CriterionOutcome out;
  const auto templates = fit_chains(0.0, 0);
  for (size_t t = 0; t < templates.size(); ++t) {
    const int n = templates[t].n;
    const auto ctx = StructureContext::make(n);
    const int m = templates[t].m;
    std::vector<std::vector<double>> scalars(m);
    std::vector<std::vector<cplx>> cs(m);
    double proportional = 0.0, imag = 0.0;
    for (int variant : {0, 1})
      for (double lam : cfg.fit_lambdas) {
        if (variant == 1 && lam != cfg.fit_lambdas.front()) continue;
        const auto rep = realize(fit_chains(lam, variant)[t]);
        for (int j = 1; j <= m; ++j) {
          const auto e = extract_cj(rep, j, ctx);
          proportional = std::max(proportional, e.residual);
          imag = std::max(imag, std::abs(e.scalar.imag()));
          if (variant == 0) scalars[j - 1].push_back(e.scalar.real());
          cs[j - 1].push_back(e.c);
        }
      }
    const double expected_slope = -1.0 / (2.0 * n);
    std::vector<double> slopes, fit_res, spread;
    const int q = static_cast<int>(cfg.fit_lambdas.size());
    for (int j = 0; j < m; ++j) {
      Eigen::MatrixXd a(q, 2);
      Eigen::VectorXd b(q);
      for (int i = 0; i < q; ++i) {
        a(i, 0) = cfg.fit_lambdas[i];
        a(i, 1) = 1.0;
        b(i) = scalars[j][i];
      }
      const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
      slopes.push_back(coef(0));
      fit_res.push_back((a * coef - b).norm());
      double s = 0.0;
      for (const auto& c : cs[j]) s = std::max(s, std::abs(c - cs[j].front()));
      spread.push_back(s);
    }
    double worst = std::max(proportional, imag);
    for (int j = 0; j < m; ++j)
      worst = std::max({worst, std::abs(slopes[j] - expected_slope), fit_res[j], spread[j]});
    std::vector<cplx> c_first;
    for (int j = 0; j < m; ++j) c_first.push_back(cs[j].front());
    auto r = record("c04." + chain_label(templates[t]),
                    "P iota rho0([Y,.]) = s rho~(Y), with s affine in lambda of slope -1/(2n)");
    r.inputs = {{"lambdas", cfg.fit_lambdas}, {"y_variants", 2}, {"tol", cfg.fit_tol}};
    r.values = {{"expected_slope", expected_slope},
                {"slopes", slopes},
                {"fit_residuals", fit_res},
                {"c", to_json(c_first)},
                {"c_spread_over_lambda_and_y", spread},
                {"proportionality_residual", proportional},
                {"max_deviation", worst}};
    r.verdict = below(worst, cfg.fit_tol);
    out.records.push_back(r);
  }
  return out;
}

CriterionOutcome affine_condition(const SuiteConfig& cfg) {
  CriterionOutcome out;
  for (const auto& spec : fit_chains(cfg.chain_lambda, 0)) {
    const auto ctx = StructureContext::make(spec.n);
    const auto rep = realize(spec);
    std::vector<cplx> c;
    for (int j = 1; j <= spec.m; ++j) c.push_back(extract_cj(rep, j, ctx).c);
    const auto fit = check_sharp(c);
    auto r = record("c05." + chain_label(spec), spec.n == 1 ? "on the disc the constants vanish: u = v = 0"
                                                            : "c_j = u + (j-1) v along both chain types");
    r.inputs = {{"lambda", spec.lambda0}, {"m", spec.m}};
    r.values = {{"c", to_json(c)}, {"affine", fit.has_value()}};
    bool ok = fit.has_value();
    if (fit) {
      r.values["u"] = to_json(fit->u);
      r.values["v"] = to_json(fit->v);
      r.values["fit_residual"] = fit->residual;
      if (spec.n == 1) ok = std::abs(fit->u) < cfg.disc_tol && std::abs(fit->v) < cfg.disc_tol;
    }
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    out.records.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- 6

PolySection seeded_section(const RepRealization& rep, int level, int degree, std::mt19937_64& rng) {
  PolySection f = PolySection::zero(SectionSpace(rep.n, rep.dim, degree));
  const SectionSpace s = f.space();
  for (int mono = 0; mono < s.num_monomials(); ++mono)
    for (int a = 0; a < rep.level_dim(level); ++a) f.coeffs(s.index(mono, rep.level_offset(level) + a)) = random_cplx(rng);
  return f;
}

CriterionOutcome fd_identities(const SuiteConfig& cfg) {
  CriterionOutcome out;
  struct Acc {
    double residual = 0.0;
    double order = std::numeric_limits<double>::infinity();
    int count = 0;
  };
  std::map<std::string, Acc> acc;
  auto take = [&](const FdCheck& c) {
    auto& a = acc[c.name];
    a.residual = std::max(a.residual, c.residual);
    a.order = std::min(a.order, c.order);
    ++a.count;
  };
  const std::vector<FiliformSpec> specs = {default_chain(cfg), chain(1, Direction::Up, 0, 2, cfg.chain_lambda)};
  for (const auto& spec : specs) {
    const auto ctx = StructureContext::make(spec.n);
    const auto rep = realize(spec);
    std::mt19937_64 rng(cfg.fd_seed);
    for (int s = 0; s < cfg.fd_samples; ++s) {
      const Mat g = random_group_element(ctx, rng, cfg.fd_group_radius);
      const Vec z = random_ball_point(spec.n, rng, cfg.fd_point_radius);
      for (int i = 0; i < spec.n; ++i)
        for (const auto& c : verify_multiplier_derivatives(rep, g, z, i)) take(c);
      for (int level = 0; level + 1 < rep.num_levels(); ++level)
        take(verify_twisted_derivative(rep, ctx, level, g, z, seeded_section(rep, level, 3, rng)));
      for (int l = 0; l + 1 < static_cast<int>(rep.links.size()); ++l) take(verify_link_derivative(rep, ctx, l, g, z));
    }
  }
  const std::map<std::string, std::string> anchors = {
      {"k_inverse_derivative", "derivative of k~(g,z)^{-1} along p+ equals rho of the p- part times it"},
      {"y_derivative", "derivative of the p- part Y(g,z) along p+"},
      {"twisted_section_derivative", "P iota D of rho0(k~^{-1}) F(g.z) in terms of rho~(Y) and the transported section"},
      {"link_derivative", "P iota D of rho~(Y(g,z)) between consecutive links"}};
  for (const auto& [name, a] : acc) {
    auto r = record("c06." + name, anchors.at(name));
    r.inputs = {{"seed", cfg.fd_seed},           {"samples", cfg.fd_samples},   {"chains", {"n2_default", "n1_UU"}},
                {"group_radius", cfg.fd_group_radius}, {"point_radius", cfg.fd_point_radius},
                {"steps", kDefaultSteps},        {"tol", cfg.fd_tol},           {"min_order", cfg.fd_min_order}};
    r.values = {{"evaluations", a.count}, {"max_residual", a.residual}, {"min_order", a.order}};
    r.verdict = all_of({a.residual < cfg.fd_tol, a.order >= cfg.fd_min_order});
    out.records.push_back(r);
  }
  out.time_limit = 30.0;
  return out;
}

// ---------------------------------------------------------------- 7

CriterionOutcome intertwining(const SuiteConfig& cfg) {
  CriterionOutcome out;
  const auto ctx = StructureContext::make(2);
  const int d = cfg.intertwining_degree;
  std::vector<std::pair<Direction, int>> families = {{Direction::Up, 0}, {Direction::Up, 1}, {Direction::Down, 3}};
  for (auto [dir, k0] : families)
    for (int m = 1; m <= 3; ++m) {
      std::vector<double> residuals, controls;
      bool regular = true;
      for (double lam : cfg.intertwining_lambdas) {
        const auto rep = realize(chain(2, dir, k0, m, lam));
        const auto table = constants_for(rep, ctx);
        regular = regular && table.regular;
        if (!table.regular) {
          residuals.push_back(std::numeric_limits<double>::quiet_NaN());
          controls.push_back(std::numeric_limits<double>::quiet_NaN());
          continue;
        }
        const auto act0 = build_action(rep.with_zero_y(), ctx.full_basis(), d);
        const auto acty = build_action(rep, ctx.full_basis(), d);
        residuals.push_back(verify_intertwining(build_gamma(rep, ctx, table, d), act0, acty));
        controls.push_back(
            verify_intertwining(build_gamma(rep, ctx, perturbed(table, cfg.perturbation), d), act0, acty));
      }
      const auto spec = chain(2, dir, k0, m, 0.0);
      auto r = record("c07." + chain_label(spec), "Gamma pi_0(X) = pi_y(X) Gamma over the full basis");
      r.inputs = {{"lambdas", cfg.intertwining_lambdas}, {"max_degree", d}, {"tol", cfg.intertwining_tol},
                  {"perturbation", cfg.perturbation}, {"control_min", cfg.negative_control_min}};
      r.values = {{"regular", regular}, {"residuals", residuals}, {"perturbed_residuals", controls}};
      const double worst = *std::max_element(residuals.begin(), residuals.end());
      const double weakest = *std::min_element(controls.begin(), controls.end());
      r.verdict = all_of({regular, worst < cfg.intertwining_tol, weakest > cfg.negative_control_min});
      out.records.push_back(r);
    }
  // Independent route: solve the linear equations for the path constants.
  const auto rep = realize(default_chain(cfg));
  const auto table = constants_for(rep, ctx);
  const auto closed = build_gamma(rep, ctx, table, d);
  const auto solved = solve_block_gamma(rep, ctx, d, cfg.intertwining_tol, false);
  const double diff = (Mat(closed.op.matrix) - Mat(solved.gamma.op.matrix)).norm();
  auto r = record("c07.solved_constants", "the linear solve for Gamma reproduces the product formula");
  r.inputs = {{"chain", chain_label(default_chain(cfg))}, {"max_degree", d}};
  r.values = {{"unknowns", solved.unknowns}, {"rank", solved.rank},    {"residual", solved.residual},
              {"verify_residual", solved.verify_residual}, {"difference_from_product_formula", diff}};
  r.verdict = all_of({solved.solved, !solved.underdetermined, diff < cfg.intertwining_tol});
  out.records.push_back(r);
  return out;
}

// ---------------------------------------------------------------- 8

CriterionOutcome homomorphism(const SuiteConfig& cfg) {
  CriterionOutcome out;
  std::vector<FiliformSpec> specs = {default_chain(cfg), chain(2, Direction::Down, 3, 2, cfg.chain_lambda),
                                     chain(1, Direction::Up, 0, 2, cfg.chain_lambda)};
  for (const auto& spec : specs) {
    const auto ctx = StructureContext::make(spec.n);
    const auto rep = realize(spec);
    const double a = homomorphism_residual(rep, ctx, cfg.homomorphism_degree);
    const double b = homomorphism_residual(rep.with_zero_y(), ctx, cfg.homomorphism_degree);
    auto r = record("c08." + chain_label(spec), "[pi(X), pi(Y)] = pi([X,Y]) on all basis pairs");
    r.inputs = {{"max_degree", cfg.homomorphism_degree}, {"tol", cfg.homomorphism_tol}};
    r.values = {{"residual", a}, {"residual_zero_y", b}};
    r.verdict = all_of({a < cfg.homomorphism_tol, b < cfg.homomorphism_tol});
    out.records.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- 9

double pochhammer(double nu, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= nu + i;
  return p;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

CriterionOutcome kernels(const SuiteConfig& cfg) {
  CriterionOutcome out;
  const int dmax = cfg.kernel_max_degree;
  for (int n : {1, 2}) {
    const double lam = -cfg.pochhammer_nu * n / (n + 1.0);
    const auto g = gram_from_kernel(KernelFunction{n, {lam, 0}, lam}, dmax);
    double rel = 0.0, off = 0.0;
    for (int i = 0; i < g.space.num_monomials(); ++i) {
      const auto& a = g.space.monomial(i);
      const double expected = factorial(a[0]) * factorial(a[1]) / pochhammer(cfg.pochhammer_nu, a[0] + a[1]);
      rel = std::max(rel, std::abs(g.gram(i, i) - expected) / expected);
      for (int j = 0; j < g.space.num_monomials(); ++j)
        if (j != i) off = std::max(off, std::abs(g.gram(i, j)) / expected);
    }
    auto r = record("c09.pochhammer_n" + std::to_string(n),
                    "scalar norms ||z^alpha||^2 = alpha! / (nu)_|alpha| for (1 - <z,w>)^(-nu)");
    r.inputs = {{"n", n}, {"nu", cfg.pochhammer_nu}, {"lambda", lam}, {"max_degree", dmax}, {"tol", cfg.pochhammer_tol}};
    r.values = {{"max_relative_error", rel}, {"max_relative_off_diagonal", off}};
    r.verdict = all_of({rel < cfg.pochhammer_tol, off < cfg.pochhammer_tol});
    out.records.push_back(r);
  }
  {
    const auto ctx = StructureContext::make(2);
    const auto rep = realize(default_chain(cfg));
    const auto g0 = gram_from_kernel(rep, dmax);
    const double inv = gram_k_invariance(g0.gram, rep.with_zero_y(), ctx, dmax);
    auto r = record("c09.k_invariance", "Gram blocks commute with the compact k action");
    r.inputs = {{"chain", chain_label(default_chain(cfg))}, {"max_degree", dmax}, {"tol", cfg.invariance_tol}};
    r.values = {{"positive", g0.positive}, {"residual", inv}};
    r.verdict = all_of({g0.positive, inv < cfg.invariance_tol});
    out.records.push_back(r);
  }
  CsvTable table({"sym_power", "lambda", "degree", "min_eig", "verdict"});
  const auto grid = lambda_grid(cfg.threshold_lo, cfg.threshold_hi, cfg.threshold_step);
  for (int k : cfg.threshold_sym_powers) {
    const auto scan = probe_lambda_threshold(2, k, grid, dmax);
    for (size_t i = 0; i < scan.lambdas.size(); ++i)
      table.row({std::to_string(k), fmt_double(scan.lambdas[i]),
                 std::to_string(scan.positive[i] ? dmax : scan.failing_degree[i]), fmt_double(scan.min_eig[i]),
                 scan.positive[i] ? "positive" : "not_positive"});
    auto r = record("c09.threshold_sym" + std::to_string(k), "positivity holds below a single lambda threshold");
    r.inputs = {{"n", 2}, {"sym_power", k}, {"lambda_lo", cfg.threshold_lo}, {"lambda_hi", cfg.threshold_hi},
                {"step", cfg.threshold_step}, {"max_degree", dmax}};
    r.values = {{"monotone", scan.monotone}};
    if (scan.bracket) r.values["bracket"] = {scan.bracket->first, scan.bracket->second};
    r.verdict = scan.monotone ? Verdict::Pass : Verdict::Fail;
    out.records.push_back(r);
  }
  out.tables.emplace_back("threshold.csv", table.str());
  return out;
}

// ---------------------------------------------------------------- 10

CriterionOutcome unitarity(const SuiteConfig& cfg) {
  CriterionOutcome out;
  const auto ctx = StructureContext::make(2);
  const int d = cfg.unitarity_degree;
  std::vector<FiliformSpec> specs = {default_chain(cfg), chain(2, Direction::Down, 3, 2, -2.0)};
  for (const auto& spec : specs) {
    const auto rep = realize(spec);
    const auto table = constants_for(rep, ctx);
    const auto g0 = gram_from_kernel(rep, d);
    const auto act0 = build_action(rep.with_zero_y(), ctx.compact_basis(), d);
    const auto acty = build_action(rep, ctx.compact_basis(), d);
    const double base = skew_adjointness_residual(g0.gram, act0);
    const double good = skew_adjointness_residual(pushforward_gram(g0.gram, build_gamma(rep, ctx, table, d)), acty);
    const double bad = skew_adjointness_residual(
        pushforward_gram(g0.gram, build_gamma(rep, ctx, perturbed(table, cfg.perturbation), d)), acty);
    auto r = record("c10." + chain_label(spec),
                    "the pushforward Gram makes every pi_y(X), X in su(2,1), skew-adjoint");
    r.inputs = {{"lambda", spec.lambda0}, {"max_degree", d}, {"tol", cfg.unitarity_tol},
                {"perturbation", cfg.perturbation}, {"control_min", cfg.negative_control_min}};
    r.values = {{"g0_positive", g0.positive}, {"g0_residual", base}, {"residual", good}, {"perturbed_residual", bad}};
    r.verdict = all_of({g0.positive, base < cfg.unitarity_tol, good < cfg.unitarity_tol, bad > cfg.negative_control_min});
    out.records.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- 11

CriterionOutcome difference_kernel(const SuiteConfig& cfg) {
  CriterionOutcome out;
  const auto grid = geometric_grid(cfg.diff_c_lo, cfg.diff_c_hi, cfg.diff_per_decade);
  CsvTable table({"seed", "c", "min_eig"});
  std::vector<double> minimal, exact, at_zero;
  bool all_found = true, zero_fails = true;
  for (unsigned seed : cfg.diff_seeds) {
    const auto pts = radial_shell_points(2, cfg.diff_points, seed);
    const auto res = difference_kernel_check(0, Direction::Up, cfg.diff_lambda, grid, pts);
    for (size_t i = 0; i < res.c_grid.size(); ++i)
      table.row({std::to_string(seed), fmt_double(res.c_grid[i]), fmt_double(res.min_eig[i])});
    all_found = all_found && res.minimal_c.has_value();
    minimal.push_back(res.minimal_c.value_or(std::numeric_limits<double>::quiet_NaN()));
    exact.push_back(res.exact_c);
    at_zero.push_back(res.min_eig_at_zero);
    zero_fails = zero_fails && res.min_eig_at_zero < -cfg.psd_tol;
  }
  double ratio = std::numeric_limits<double>::infinity();
  if (all_found) ratio = *std::max_element(minimal.begin(), minimal.end()) / *std::min_element(minimal.begin(), minimal.end());
  auto r = record("c11.minimal_c",
                  "C K_{sigma1,lambda-1} - (P iota D) K_{sigma0,lambda} (P iota D)^* is positive for some finite C");
  r.inputs = {{"sigma0", 0}, {"direction", "U"}, {"lambda", cfg.diff_lambda}, {"seeds", cfg.diff_seeds},
              {"points", cfg.diff_points}, {"c_lo", cfg.diff_c_lo}, {"c_hi", cfg.diff_c_hi},
              {"per_decade", cfg.diff_per_decade}, {"psd_tol", cfg.psd_tol}, {"stability_factor", cfg.stability_factor}};
  r.values = {{"minimal_c", minimal}, {"exact_c", exact}, {"stability_ratio", ratio}, {"min_eig_at_zero", at_zero}};
  r.verdict = all_of({all_found, ratio <= cfg.stability_factor, zero_fails});
  out.records.push_back(r);
  out.tables.emplace_back("difference_kernel.csv", table.str());
  return out;
}

// ---------------------------------------------------------------- 12

CriterionOutcome cowen_douglas(const SuiteConfig& cfg) {
  CriterionOutcome out;
  const auto ctx = StructureContext::make(2);
  const auto rep = realize(default_chain(cfg));
  const auto table = constants_for(rep, ctx);
  const int d = cfg.cd_degree;
  auto grams = [&](int degree) {
    const auto g0 = gram_from_kernel(rep, degree);
    return std::make_pair(g0.gram, pushforward_gram(g0.gram, build_gamma(rep, ctx, table, degree)));
  };
  const auto [g0, gy] = grams(d);
  const SectionSpace space(2, rep.dim, d);
  const auto pair = build_pair(gy, space);
  Vec dir(2);
  dir << 0.6, cplx(0.0, 0.8);

  CsvTable kd({"radius", "dimension", "gap_ratio", "sigma_below", "sigma_above", "certified"});
  std::vector<int> dims;
  bool certified = true;
  for (double rad : cfg.cd_radii) {
    const auto k = joint_kernel_dim(pair, rad * dir, cfg.kernel_dim_tol);
    dims.push_back(k.dimension);
    certified = certified && k.certified;
    const double lo = k.dimension > 0 ? k.singular_values[k.dimension - 1] : 0.0;
    const double hi = k.dimension < static_cast<int>(k.singular_values.size()) ? k.singular_values[k.dimension] : 0.0;
    kd.row({fmt_double(rad), std::to_string(k.dimension), fmt_double(k.gap_ratio), fmt_double(lo), fmt_double(hi),
            k.certified ? "true" : "false"});
  }
  out.tables.emplace_back("kernel_dim.csv", kd.str());
  const bool constant = std::all_of(dims.begin(), dims.end(), [&](int v) { return v == rep.dim; });

  // Scalar case and truncation stability at w = (0.3, 0.1).
  const auto scalar = gram_from_kernel(KernelFunction{2, {-2.0, 0}, -2.0}, d);
  const int scalar_dim = joint_kernel_dim(build_pair(scalar.gram, scalar.space), Vec::Zero(2), cfg.kernel_dim_tol).dimension;
  Vec w(2);
  w << 0.3, 0.1;
  const int at_d = joint_kernel_dim(pair, w, cfg.kernel_dim_tol).dimension;
  const auto [g0n, gyn] = grams(d + 1);
  const int at_next = joint_kernel_dim(build_pair(gyn, SectionSpace(2, rep.dim, d + 1)), w, cfg.kernel_dim_tol).dimension;

  auto r = record("c12.joint_kernel_dimension", "the joint kernel of M_i^* - conj(w_i) has constant dimension dim V");
  r.inputs = {{"chain", chain_label(default_chain(cfg))}, {"max_degree", d}, {"radii", cfg.cd_radii},
              {"direction", {to_json(dir(0)), to_json(dir(1))}}, {"tol", cfg.kernel_dim_tol}};
  r.values = {{"dim_V", rep.dim},      {"dimensions", dims},          {"certified", certified},
              {"scalar_dimension", scalar_dim}, {"at_w_degree_d", at_d}, {"at_w_degree_d_plus_1", at_next}};
  r.verdict = all_of({constant, certified, scalar_dim == 1, at_d == rep.dim, at_next == rep.dim});
  out.records.push_back(r);

  const auto acty = build_action(rep, ctx.compact_basis(), d);
  const auto h = homogeneity_check(pair, acty);
  r = record("c12.homogeneity", "[pi(X), M_i] + M_{tau_i(X)} = 0 and pi(X) skew-adjoint for X in su(2,1)");
  r.inputs = {{"max_degree", d}, {"tol", cfg.homogeneity_tol}};
  r.values = {{"skew_adjoint", h.skew_adjoint}, {"commutation", h.commutation},
              {"per_element_commutation", h.per_element_commutation}};
  r.verdict = all_of({h.commutation < cfg.homogeneity_tol, h.skew_adjoint < cfg.homogeneity_tol});
  out.records.push_back(r);

  const auto sim = similarity_check(g0, gy, space, cfg.similarity_degrees);
  CsvTable st({"degree", "condition", "ratio_min", "ratio_max"});
  for (size_t i = 0; i < sim.degrees.size(); ++i)
    st.row({std::to_string(sim.degrees[i]), fmt_double(sim.condition[i]), fmt_double(sim.ratio_min[i]),
            fmt_double(sim.ratio_max[i])});
  out.tables.emplace_back("similarity.csv", st.str());
  r = record("c12.similarity", "the identity map from H^0 to H^y intertwines the multiplication tuples");
  r.inputs = {{"degrees", cfg.similarity_degrees}};
  r.values = {{"condition", sim.condition}, {"spread", sim.spread}, {"intertwining", sim.intertwining}};
  r.verdict = all_of({std::isfinite(sim.spread), sim.intertwining == 0.0});
  out.records.push_back(r);
  return out;
}

const char* kTitles[] = {"",
                         "structure suite",
                         "Clebsch-Gordan suite",
                         "chain-type brute force",
                         "affine constants fit",
                         "affine condition on both ball types and the disc",
                         "finite-difference derivative identities",
                         "intertwining of the Gamma operator",
                         "homomorphism property of the action",
                         "kernel and Gram suite",
                         "unitarity of the pushforward Gram",
                         "difference-kernel positivity",
                         "Cowen-Douglas pair suite"};

}  // namespace

CriterionOutcome run_criterion(int id, const SuiteConfig& cfg) {
  require(id >= 1 && id <= kNumCriteria, Errc::PreconditionViolated, "criterion id out of range");
  const auto start = Clock::now();
  CriterionOutcome out;
  switch (id) {
    case 1: out = structure(cfg); break;
    case 2: out = clebsch_gordan(cfg); break;
    case 3: out = chain_types(cfg); break;
    case 4: out = affine_constants(cfg); break;
    case 5: out = affine_condition(cfg); break;
    case 6: out = fd_identities(cfg); break;
    case 7: out = intertwining(cfg); break;
    case 8: out = homomorphism(cfg); break;
    case 9: out = kernels(cfg); break;
    case 10: out = unitarity(cfg); break;
    case 11: out = difference_kernel(cfg); break;
    case 12: out = cowen_douglas(cfg); break;
  }
  out.id = id;
  out.title = kTitles[id];
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.pass = !out.records.empty() &&
             std::all_of(out.records.begin(), out.records.end(), [](const auto& r) { return r.verdict == Verdict::Pass; });
  return out;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  const auto start = Clock::now();
  SuiteResult res;
  res.report.command = "suite";
  res.report.config = to_json(cfg);
  for (int id = 1; id <= kNumCriteria; ++id) {
    auto c = run_criterion(id, cfg);
    for (const auto& r : c.records) res.report.add(r);
    res.criteria.push_back(std::move(c));
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

}  // namespace hbundle
