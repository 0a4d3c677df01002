#include "hbundle/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <regex>

#include "hbundle/cd_pairs.hpp"
#include "hbundle/gamma_op.hpp"
#include "hbundle/hc_action.hpp"
#include "hbundle/rkhs.hpp"

namespace hbundle {

FiliformSpec ChainArgs::spec() const {
  FiliformSpec s;
  s.n = n;
  s.direction = direction;
  s.k0 = k0;
  s.m = m;
  s.lambda0 = lambda;
  s.y = y.empty() ? std::vector<cplx>(std::max(m, 0), 1.0) : y;
  return s;
}

Json ChainArgs::to_json() const {
  const auto s = spec();
  return {{"n", n}, {"direction", std::string(1, direction_char(direction))}, {"k0", k0}, {"m", m},
          {"lambda", lambda}, {"y", hbundle::to_json(s.y)}};
}

RepRealization realize_chain(const ChainArgs& a) {
  auto s = a.spec();
  const bool all_zero = !s.y.empty() && std::all_of(s.y.begin(), s.y.end(), [](cplx v) { return v == 0.0; });
  if (!all_zero) return realize(s);
  std::fill(s.y.begin(), s.y.end(), cplx(1.0));
  return realize(s).with_zero_y();
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  static const std::regex number(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-]\s*(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*i)?\s*$)");
  static const std::regex imag_only(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*i\s*$)");
  std::vector<cplx> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t end = std::min(text.find(',', start), text.size());
    const std::string tok = text.substr(start, end - start);
    std::smatch m;
    auto value = [](std::string s) {
      s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
      if (s.empty() || s == "+") return 1.0;
      if (s == "-") return -1.0;
      return std::stod(s);
    };
    if (std::regex_match(tok, m, imag_only)) {
      out.emplace_back(0.0, value(m[1].str()));
    } else if (std::regex_match(tok, m, number) && (m[1].matched || m[2].matched)) {
      out.emplace_back(m[1].matched ? std::stod(m[1].str()) : 0.0, m[2].matched ? value(m[2].str()) : 0.0);
    } else {
      throw Error(Errc::PreconditionViolated, "cannot parse complex number '" + tok + "'");
    }
    start = end + 1;
  }
  return out;
}

Direction parse_direction(const std::string& text) {
  if (text == "up" || text == "Up" || text == "U") return Direction::Up;
  if (text == "down" || text == "Down" || text == "D") return Direction::Down;
  throw Error(Errc::PreconditionViolated, "direction must be up or down");
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch:
    case Errc::PreconditionViolated:
    case Errc::InadmissibleChain:
    case Errc::IndefiniteGram:
      return 2;
    case Errc::NotProportional:
    case Errc::NoSolution:
      return 1;
    case Errc::NotInBigCell:
    case Errc::BranchCut:
    case Errc::DegenerateKilling:
    case Errc::NumericBreakdown:
      return 3;
  }
  return 3;
}

namespace {

CheckRecord record(std::string name, std::string anchor, Json inputs) {
  CheckRecord r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.inputs = std::move(inputs);
  return r;
}

CommandResult start(const std::string& command, Json config) {
  CommandResult c;
  c.report.command = command;
  c.report.config = std::move(config);
  return c;
}

Mat perturbed(const ConstantsTable& t, double eps) {
  Mat c = t.cjk;
  if (c.rows() > 1) c(1, 0) *= 1.0 + eps;
  return c;
}

double pochhammer(double nu, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= nu + i;
  return p;
}

}  // namespace

CommandResult cmd_rep_validate(const ChainArgs& a) {
  auto out = start("rep validate", a.to_json());
  const auto rep = realize_chain(a);
  const auto v = validate(rep);
  auto r = record("validate", "rho0 and rho- form a graded representation of k^C + p-", a.to_json());
  r.values = {{"chain", chain_string(a.spec())}, {"dim", rep.dim}, {"bracket_relation", v.eq1},
              {"commutativity", v.commutativity}, {"grading", v.grading}, {"skew_hermitian", v.skew_hermitian}};
  r.verdict = v.pass ? Verdict::Pass : Verdict::Fail;
  out.report.add(r);
  return out;
}

CommandResult cmd_rep_classify(int k0, int m) {
  Json cfg = {{"k0", k0}, {"m", m}};
  auto out = start("rep classify", cfg);
  const auto c = classify_chains(k0, m);
  Json residuals = Json::object();
  for (const auto& t : c.tested) residuals[t.chain] = t.residual;
  std::vector<std::string> expected = {std::string(m, 'U')};
  if (m <= k0) expected.push_back(std::string(m, 'D'));
  auto valid = c.valid;
  std::sort(valid.begin(), valid.end());
  std::sort(expected.begin(), expected.end());
  auto r = record("classify", "only all-up and all-down chains give a commuting rho-", cfg);
  r.values = {{"valid", c.valid}, {"commutator_residuals", residuals}};
  r.verdict = valid == expected ? Verdict::Pass : Verdict::Fail;
  out.report.add(r);
  CsvTable t({"chain", "residual", "valid"});
  for (const auto& x : c.tested) t.row({x.chain, fmt_double(x.residual), x.valid ? "true" : "false"});
  out.tables.emplace_back("chains.csv", t.str());
  return out;
}

CommandResult cmd_rep_constants(const ChainArgs& a) {
  auto out = start("rep constants", a.to_json());
  const auto ctx = StructureContext::make(a.n);
  const auto rep = realize_chain(a);
  std::vector<cplx> c, s;
  double worst = 0.0;
  for (int j = 1; j <= a.m; ++j) {
    const auto e = extract_cj(rep, j, ctx);
    c.push_back(e.c);
    s.push_back(e.scalar);
    worst = std::max(worst, e.residual);
  }
  const auto fit = check_sharp(c);
  auto r = record("constants", "c_j = u + (j-1) v along the chain", a.to_json());
  r.values = {{"c", to_json(c)}, {"scalar", to_json(s)}, {"proportionality_residual", worst}, {"affine", fit.has_value()}};
  if (fit) {
    r.values["u"] = to_json(fit->u);
    r.values["v"] = to_json(fit->v);
    const auto table = cjk_table(fit->u, fit->v, a.lambda, a.n, a.m);
    r.values["regular"] = table.regular;
    r.values["cjk"] = to_json(table.cjk);
    CsvTable t({"j", "k", "re", "im"});
    for (int j = 0; j <= a.m; ++j)
      for (int k = 0; k < j; ++k)
        t.row({std::to_string(j), std::to_string(k), fmt_double(table.cjk(j, k).real()), fmt_double(table.cjk(j, k).imag())});
    out.tables.emplace_back("constants.csv", t.str());
  }
  r.verdict = fit ? Verdict::Pass : Verdict::Fail;
  out.report.add(r);
  return out;
}

CommandResult cmd_gamma_check(const ChainArgs& a, int degree, double tol) {
  Json cfg = a.to_json();
  cfg["degree"] = degree;
  cfg["tol"] = tol;
  auto out = start("gamma check", cfg);
  require(a.n == 1 || a.n == 2, Errc::PreconditionViolated, "n must be 1 or 2");
  const auto ctx = StructureContext::make(a.n);
  const auto rep = realize_chain(a);
  const auto table = constants_for(rep, ctx);
  const auto gamma = build_gamma(rep, ctx, table, degree);
  const auto act0 = build_action(rep.with_zero_y(), ctx.full_basis(), degree);
  const auto acty = build_action(rep, ctx.full_basis(), degree);
  const double res = verify_intertwining(gamma, act0, acty);
  auto r = record("intertwining", "Gamma pi_0(X) = pi_y(X) Gamma over the full basis", cfg);
  r.values = {{"c", to_json(table.c)}, {"cjk", to_json(table.cjk)}, {"residual", res}};
  r.verdict = below(res, tol);
  out.report.add(r);
  return out;
}

CommandResult cmd_kernel_gram(int n, int sym, double nu, int max_degree, double tol) {
  const double lambda = -nu * n / (n + 1.0);
  Json cfg = {{"n", n}, {"sym", sym}, {"nu", nu}, {"lambda", lambda}, {"max_degree", max_degree}, {"tol", tol}};
  auto out = start("kernel gram", cfg);
  require(sym >= 0 && (n == 2 || sym == 0), Errc::PreconditionViolated, "sym must be 0 when n = 1");
  const auto g = gram_from_kernel(KernelFunction{n, {lambda, sym}, lambda}, max_degree);
  CsvTable t({"degree", "min_eig"});
  for (int d = 0; d <= max_degree; ++d) t.row({std::to_string(d), fmt_double(g.min_eig[d])});
  out.tables.emplace_back("gram_blocks.csv", t.str());
  auto r = record("positivity", "every degree block of the coefficient matrix is positive definite", cfg);
  r.values = {{"min_eig", g.min_eig}, {"bad_degrees", g.bad_degrees}};
  r.verdict = g.positive ? Verdict::Pass : Verdict::Fail;
  out.report.add(r);
  if (sym == 0 && g.positive) {
    double rel = 0.0;
    for (int i = 0; i < g.space.num_monomials(); ++i) {
      const auto& al = g.space.monomial(i);
      const double expected = std::tgamma(al[0] + 1.0) * std::tgamma(al[1] + 1.0) / pochhammer(nu, al[0] + al[1]);
      rel = std::max(rel, std::abs(g.gram(i, i) - expected) / expected);
      for (int j = 0; j < g.space.num_monomials(); ++j)
        if (j != i) rel = std::max(rel, std::abs(g.gram(i, j)) / expected);
    }
    auto p = record("pochhammer", "||z^alpha||^2 = alpha! / (nu)_|alpha|", cfg);
    p.values = {{"max_relative_error", rel}};
    p.verdict = below(rel, tol);
    out.report.add(p);
  }
  return out;
}

CommandResult cmd_kernel_threshold(int n, int sym, double lo, double hi, double step, int max_degree) {
  Json cfg = {{"n", n}, {"sym", sym}, {"lo", lo}, {"hi", hi}, {"step", step}, {"max_degree", max_degree}};
  auto out = start("kernel threshold", cfg);
  const auto scan = probe_lambda_threshold(n, sym, lambda_grid(lo, hi, step), max_degree);
  CsvTable t({"lambda", "degree", "min_eig", "verdict"});
  for (size_t i = 0; i < scan.lambdas.size(); ++i)
    t.row({fmt_double(scan.lambdas[i]), std::to_string(scan.positive[i] ? max_degree : scan.failing_degree[i]),
           fmt_double(scan.min_eig[i]), scan.positive[i] ? "positive" : "not_positive"});
  out.tables.emplace_back("threshold.csv", t.str());
  auto r = record("threshold", "positivity holds below a single lambda threshold", cfg);
  r.values = {{"monotone", scan.monotone}};
  if (scan.bracket) r.values["bracket"] = {scan.bracket->first, scan.bracket->second};
  r.verdict = scan.monotone ? Verdict::Pass : Verdict::Fail;
  out.report.add(r);
  return out;
}

CommandResult cmd_kernel_difference(int sym0, Direction dir, double lambda, const std::vector<unsigned>& seeds,
                                    int points, double c_lo, double c_hi, int per_decade, double stability_factor) {
  Json cfg = {{"sym0", sym0}, {"direction", std::string(1, direction_char(dir))}, {"lambda", lambda},
              {"seeds", seeds}, {"points", points}, {"c_lo", c_lo}, {"c_hi", c_hi}, {"per_decade", per_decade},
              {"stability_factor", stability_factor}};
  auto out = start("kernel diffkernel", cfg);
  require(!seeds.empty(), Errc::PreconditionViolated, "at least one seed");
  const auto grid = geometric_grid(c_lo, c_hi, per_decade);
  CsvTable t({"seed", "c", "min_eig"});
  std::vector<double> minimal;
  for (unsigned seed : seeds) {
    const auto res = difference_kernel_check(sym0, dir, lambda, grid, radial_shell_points(2, points, seed));
    for (size_t i = 0; i < res.c_grid.size(); ++i)
      t.row({std::to_string(seed), fmt_double(res.c_grid[i]), fmt_double(res.min_eig[i])});
    Json in = cfg;
    in["seed"] = seed;
    auto r = record("seed_" + std::to_string(seed),
                    "C K_{sigma1,lambda-1} - (P iota D) K_{sigma0,lambda} (P iota D)^* is positive for some finite C", in);
    r.values = {{"exact_c", res.exact_c}, {"min_eig_at_zero", res.min_eig_at_zero}, {"zero_is_psd", res.zero_is_psd}};
    if (res.minimal_c) {
      const auto it = std::find(res.c_grid.begin(), res.c_grid.end(), *res.minimal_c);
      r.values["bracket"] = {it == res.c_grid.begin() ? 0.0 : *(it - 1), *res.minimal_c};
      minimal.push_back(*res.minimal_c);
    } else {
      r.values["bracket"] = nullptr;
    }
    r.verdict = all_of({res.minimal_c.has_value(), !res.zero_is_psd});
    out.report.add(r);
  }
  if (seeds.size() > 1) {
    auto r = record("stability", "the minimal C is stable across seeds", cfg);
    double ratio = std::numeric_limits<double>::infinity();
    if (minimal.size() == seeds.size())
      ratio = *std::max_element(minimal.begin(), minimal.end()) / *std::min_element(minimal.begin(), minimal.end());
    r.values = {{"minimal_c", minimal}, {"ratio", ratio}};
    r.verdict = ratio <= stability_factor ? Verdict::Pass : Verdict::Fail;
    out.report.add(r);
  }
  out.tables.emplace_back("difference_kernel.csv", t.str());
  return out;
}

CommandResult cmd_kernel_unitarity(const ChainArgs& a, int degree, double tol, double perturbation) {
  Json cfg = a.to_json();
  cfg["degree"] = degree;
  cfg["tol"] = tol;
  cfg["perturbation"] = perturbation;
  auto out = start("kernel unitarity", cfg);
  require(a.n == 2, Errc::PreconditionViolated, "unitarity is checked on the C^2 ball");
  const auto ctx = StructureContext::make(2);
  const auto rep = realize_chain(a);
  const auto table = constants_for(rep, ctx);
  const auto g0 = gram_from_kernel(rep, degree);
  require(g0.positive, Errc::IndefiniteGram, "G0 is not positive definite at this lambda");
  const auto acty = build_action(rep, ctx.compact_basis(), degree);
  const double good = skew_adjointness_residual(pushforward_gram(g0.gram, build_gamma(rep, ctx, table, degree)), acty);
  const double bad =
      skew_adjointness_residual(pushforward_gram(g0.gram, build_gamma(rep, ctx, perturbed(table, perturbation), degree)), acty);
  auto r = record("unitarity", "the pushforward Gram makes every pi_y(X), X in su(2,1), skew-adjoint", cfg);
  r.values = {{"residual", good}, {"perturbed_residual", bad}};
  r.verdict = below(good, tol);
  out.report.add(r);
  return out;
}

namespace {

struct PairData {
  RepRealization rep;
  Mat g0, gy;
  SectionSpace space{2, 1, 0};
};

PairData pair_data(const ChainArgs& a, int degree) {
  require(a.n == 2, Errc::PreconditionViolated, "pairs are built on the C^2 ball");
  const auto ctx = StructureContext::make(2);
  PairData p{realize_chain(a), {}, {}, SectionSpace(2, 1, degree)};
  const auto g0 = gram_from_kernel(p.rep, degree);
  require(g0.positive, Errc::IndefiniteGram, "G0 is not positive definite at this lambda");
  p.g0 = g0.gram;
  p.gy = pushforward_gram(g0.gram, build_gamma(p.rep, ctx, constants_for(p.rep, ctx), degree));
  p.space = SectionSpace(2, p.rep.dim, degree);
  return p;
}

}  // namespace

CommandResult cmd_cd_kerneldim(const ChainArgs& a, const Vec& w, int degree, double tol,
                               const std::vector<double>& radii) {
  Json cfg = a.to_json();
  cfg["w"] = {to_json(w(0)), to_json(w(1))};
  cfg["degree"] = degree;
  cfg["tol"] = tol;
  cfg["radii"] = radii;
  auto out = start("cd kerneldim", cfg);
  require(w.size() == 2, Errc::DimensionMismatch, "w must have two coordinates");
  require(w.norm() <= 0.5 + 1e-12, Errc::PreconditionViolated, "|w| must be at most 0.5");
  const auto p = pair_data(a, degree);
  const auto pair = build_pair(p.gy, p.space);
  const auto k = joint_kernel_dim(pair, w, tol);
  auto r = record("kernel_dimension", "the joint kernel of M_i^* - conj(w_i) has dimension dim V", cfg);
  const int shown = std::min<int>(k.singular_values.size(), k.dimension + 3);
  r.values = {{"dim_V", p.rep.dim}, {"dimension", k.dimension}, {"gap_ratio", k.gap_ratio}, {"certified", k.certified},
              {"smallest_singular_values", std::vector<double>(k.singular_values.begin(), k.singular_values.begin() + shown)}};
  r.verdict = k.dimension != p.rep.dim ? Verdict::Fail : (k.certified ? Verdict::Pass : Verdict::Marginal);
  out.report.add(r);
  Vec dir(2);
  if (w.norm() > 0.0)
    dir = w / w.norm();
  else
    dir << 0.6, cplx(0.0, 0.8);
  CsvTable t({"radius", "dimension", "gap_ratio", "certified"});
  for (double rad : radii) {
    const auto kr = joint_kernel_dim(pair, rad * dir, tol);
    t.row({fmt_double(rad), std::to_string(kr.dimension), fmt_double(kr.gap_ratio), kr.certified ? "true" : "false"});
  }
  out.tables.emplace_back("kernel_dim.csv", t.str());
  return out;
}

CommandResult cmd_cd_homogeneity(const ChainArgs& a, int degree, double tol) {
  Json cfg = a.to_json();
  cfg["degree"] = degree;
  cfg["tol"] = tol;
  auto out = start("cd homogeneity", cfg);
  const auto p = pair_data(a, degree);
  const auto ctx = StructureContext::make(2);
  const auto act = build_action(p.rep, ctx.compact_basis(), degree);
  const auto h = homogeneity_check(build_pair(p.gy, p.space), act);
  CsvTable t({"element", "commutation"});
  for (size_t i = 0; i < h.per_element_commutation.size(); ++i)
    t.row({std::to_string(i), fmt_double(h.per_element_commutation[i])});
  out.tables.emplace_back("homogeneity.csv", t.str());
  auto r = record("homogeneity", "[pi(X), M_i] + M_{tau_i(X)} = 0 and pi(X) skew-adjoint for X in su(2,1)", cfg);
  r.values = {{"skew_adjoint", h.skew_adjoint}, {"commutation", h.commutation},
              {"per_element_commutation", h.per_element_commutation}};
  r.verdict = all_of({h.skew_adjoint < tol, h.commutation < tol});
  out.report.add(r);
  return out;
}

CommandResult cmd_cd_similarity(const ChainArgs& a, const std::vector<int>& degrees) {
  Json cfg = a.to_json();
  cfg["degrees"] = degrees;
  auto out = start("cd similarity", cfg);
  require(!degrees.empty(), Errc::PreconditionViolated, "at least one degree");
  const auto p = pair_data(a, *std::max_element(degrees.begin(), degrees.end()));
  const auto sim = similarity_check(p.g0, p.gy, p.space, degrees);
  CsvTable t({"degree", "condition", "ratio_min", "ratio_max"});
  for (size_t i = 0; i < sim.degrees.size(); ++i)
    t.row({std::to_string(sim.degrees[i]), fmt_double(sim.condition[i]), fmt_double(sim.ratio_min[i]),
           fmt_double(sim.ratio_max[i])});
  out.tables.emplace_back("similarity.csv", t.str());
  auto r = record("similarity", "the identity map from H^0 to H^y intertwines the multiplication tuples", cfg);
  r.values = {{"condition", sim.condition}, {"spread", sim.spread}, {"intertwining", sim.intertwining}};
  r.verdict = all_of({std::isfinite(sim.spread), sim.intertwining == 0.0});
  out.report.add(r);
  return out;
}

CommandResult cmd_suite(const SuiteConfig& cfg) {
  auto res = run_suite(cfg);
  CommandResult out;
  out.report = std::move(res.report);
  for (const auto& c : res.criteria)
    for (const auto& t : c.tables) out.tables.push_back(t);
  return out;
}

}  // namespace hbundle
