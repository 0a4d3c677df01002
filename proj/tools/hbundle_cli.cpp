#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hbundle/commands.hpp"

using namespace hbundle;

namespace {

struct ChainOpts {
  ChainArgs args;
  std::string dir = "up";
  std::string y;

  void attach(CLI::App* app) {
    app->add_option("--n", args.n, "ball dimension (1 or 2)")->check(CLI::IsMember({1, 2}));
    app->add_option("--dir", dir, "chain direction: up or down");
    app->add_option("--k0", args.k0, "symmetric power at level 0")->check(CLI::NonNegativeNumber);
    app->add_option("--m", args.m, "number of links")->check(CLI::NonNegativeNumber);
    app->add_option("--lambda", args.lambda, "weight of level 0");
    app->add_option("--y", y, "link couplings, comma separated, e.g. 1,0.5+0.2i (default all 1)");
  }

  ChainArgs resolve() const {
    ChainArgs a = args;
    a.direction = parse_direction(dir);
    if (!y.empty()) a.y = parse_complex_list(y);
    return a;
  }
};

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

int emit(const CommandResult& res, const std::string& out_dir) {
  const std::string json = dump(res.report.to_json());
  std::cout << json;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_text(out_dir + "/report.json", json);
    for (const auto& [name, csv] : res.tables) write_text(out_dir + "/" + name, csv);
  }
  return res.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous bundles on the complex ball: verification driver"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir;
  app.add_option("--out", out_dir, "directory for report.json and CSV tables");

  std::function<CommandResult()> run;

  // rep
  auto* rep = app.add_subcommand("rep", "representations of k^C + p-");
  rep->require_subcommand(1);
  ChainOpts rep_validate_opts;
  auto* rv = rep->add_subcommand("validate", "realize a chain and check its relations");
  rep_validate_opts.attach(rv);
  rv->callback([&] { run = [&] { return cmd_rep_validate(rep_validate_opts.resolve()); }; });

  int cl_k0 = 3, cl_m = 2;
  auto* rc = rep->add_subcommand("classify", "brute force over up/down chains");
  rc->add_option("--k0", cl_k0)->check(CLI::NonNegativeNumber);
  rc->add_option("--m", cl_m)->check(CLI::PositiveNumber);
  rc->callback([&] { run = [&] { return cmd_rep_classify(cl_k0, cl_m); }; });

  ChainOpts rep_constants_opts;
  auto* rk = rep->add_subcommand("constants", "constants c_j, affine fit and the c_jk table");
  rep_constants_opts.attach(rk);
  rk->callback([&] { run = [&] { return cmd_rep_constants(rep_constants_opts.resolve()); }; });

  // gamma
  auto* gamma = app.add_subcommand("gamma", "the intertwining operator");
  gamma->require_subcommand(1);
  ChainOpts gamma_opts;
  int gamma_degree = 5;
  double gamma_tol = 1e-8;
  auto* gc = gamma->add_subcommand("check", "Gamma pi_0 = pi_y Gamma over the full basis");
  gamma_opts.attach(gc);
  gc->add_option("--degree", gamma_degree)->check(CLI::PositiveNumber);
  gc->add_option("--tol", gamma_tol);
  gc->callback([&] { run = [&] { return cmd_gamma_check(gamma_opts.resolve(), gamma_degree, gamma_tol); }; });

  // kernel
  auto* kernel = app.add_subcommand("kernel", "reproducing kernels and Gram matrices");
  kernel->require_subcommand(1);
  int kg_n = 2, kg_sym = 0, kg_deg = 8;
  double kg_nu = 3.0, kg_tol = 1e-10;
  auto* kg = kernel->add_subcommand("gram", "Gram matrix of the invariant kernel");
  kg->add_option("--n", kg_n)->check(CLI::IsMember({1, 2}));
  kg->add_option("--sym", kg_sym)->check(CLI::NonNegativeNumber);
  kg->add_option("--nu", kg_nu, "exponent of (1 - <z,w>)^(-nu)");
  kg->add_option("--max-degree", kg_deg)->check(CLI::NonNegativeNumber);
  kg->add_option("--tol", kg_tol);
  kg->callback([&] { run = [&] { return cmd_kernel_gram(kg_n, kg_sym, kg_nu, kg_deg, kg_tol); }; });

  int kt_n = 2, kt_sym = 1, kt_deg = 8;
  double kt_lo = -2.5, kt_hi = 0.5, kt_step = 0.1;
  auto* kt = kernel->add_subcommand("threshold", "positivity scan along a lambda grid");
  kt->add_option("--n", kt_n)->check(CLI::IsMember({1, 2}));
  kt->add_option("--sym", kt_sym)->check(CLI::NonNegativeNumber);
  kt->add_option("--lo", kt_lo);
  kt->add_option("--hi", kt_hi);
  kt->add_option("--step", kt_step);
  kt->add_option("--max-degree", kt_deg)->check(CLI::NonNegativeNumber);
  kt->callback([&] { run = [&] { return cmd_kernel_threshold(kt_n, kt_sym, kt_lo, kt_hi, kt_step, kt_deg); }; });

  int kd_sym0 = 0, kd_points = 20, kd_per_decade = 8;
  std::string kd_dir = "up";
  double kd_lambda = -1.0, kd_lo = 1e-3, kd_hi = 1e3, kd_factor = 2.0;
  std::vector<unsigned> kd_seeds = {7};
  auto* kd = kernel->add_subcommand("diffkernel", "minimal C making the difference kernel positive");
  kd->add_option("--sym0", kd_sym0)->check(CLI::NonNegativeNumber);
  kd->add_option("--dir", kd_dir);
  kd->add_option("--lambda", kd_lambda);
  kd->add_option("--seed", kd_seeds, "one or more seeds")->expected(1, -1);
  kd->add_option("--points", kd_points)->check(CLI::PositiveNumber);
  kd->add_option("--c-lo", kd_lo);
  kd->add_option("--c-hi", kd_hi);
  kd->add_option("--per-decade", kd_per_decade)->check(CLI::PositiveNumber);
  kd->add_option("--stability-factor", kd_factor);
  kd->callback([&] {
    run = [&] {
      return cmd_kernel_difference(kd_sym0, parse_direction(kd_dir), kd_lambda, kd_seeds, kd_points, kd_lo, kd_hi,
                                   kd_per_decade, kd_factor);
    };
  });

  ChainOpts ku_opts;
  int ku_deg = 5;
  double ku_tol = 1e-8, ku_pert = 0.1;
  auto* ku = kernel->add_subcommand("unitarity", "skew-adjointness of pi_y under the pushforward Gram");
  ku_opts.attach(ku);
  ku->add_option("--degree", ku_deg)->check(CLI::PositiveNumber);
  ku->add_option("--tol", ku_tol);
  ku->add_option("--perturbation", ku_pert);
  ku->callback([&] { run = [&] { return cmd_kernel_unitarity(ku_opts.resolve(), ku_deg, ku_tol, ku_pert); }; });

  // cd
  auto* cd = app.add_subcommand("cd", "multiplication pairs on the Hilbert space of sections");
  cd->require_subcommand(1);
  ChainOpts ck_opts;
  std::string ck_w = "0,0";
  int ck_deg = 8;
  double ck_tol = 1e-6;
  std::vector<double> ck_radii = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  auto* ck = cd->add_subcommand("kerneldim", "joint kernel dimension of the adjoint pair");
  ck_opts.attach(ck);
  ck->add_option("--w", ck_w, "point, e.g. 0.3,0.1");
  ck->add_option("--degree", ck_deg)->check(CLI::PositiveNumber);
  ck->add_option("--tol", ck_tol);
  ck->add_option("--radii", ck_radii)->delimiter(',');
  ck->callback([&] {
    run = [&] {
      const auto w = parse_complex_list(ck_w);
      require(w.size() == 2, Errc::PreconditionViolated, "--w needs two coordinates");
      Vec wv(2);
      wv << w[0], w[1];
      return cmd_cd_kerneldim(ck_opts.resolve(), wv, ck_deg, ck_tol, ck_radii);
    };
  });

  ChainOpts ch_opts;
  int ch_deg = 8;
  double ch_tol = 1e-8;
  auto* ch = cd->add_subcommand("homogeneity", "commutation of the action with the multiplication pair");
  ch_opts.attach(ch);
  ch->add_option("--degree", ch_deg)->check(CLI::PositiveNumber);
  ch->add_option("--tol", ch_tol);
  ch->callback([&] { run = [&] { return cmd_cd_homogeneity(ch_opts.resolve(), ch_deg, ch_tol); }; });

  ChainOpts cs_opts;
  std::string cs_degrees = "1..8";
  auto* cs = cd->add_subcommand("similarity", "conditioning of the identity map H^0 -> H^y by degree");
  cs_opts.attach(cs);
  cs->add_option("--degrees", cs_degrees, "range lo..hi or comma list");
  cs->callback([&] { run = [&] { return cmd_cd_similarity(cs_opts.resolve(), parse_degrees(cs_degrees)); }; });

  // suite
  std::string config_path;
  auto* suite = app.add_subcommand("suite", "the full acceptance battery");
  suite->add_option("--config", config_path, "suite configuration JSON")->check(CLI::ExistingFile);
  suite->callback([&] {
    run = [&] {
      SuiteConfig cfg;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        Json j;
        try {
          j = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
          throw Error(Errc::PreconditionViolated, std::string("config is not valid JSON: ") + e.what());
        }
        cfg = suite_config_from_json(j);
      }
      return cmd_suite(cfg);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    code = emit(run(), out_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 3;
  }
  std::cerr << "wall_time_s: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << "\n";
  return code;
}
