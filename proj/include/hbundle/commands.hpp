#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hbundle/report.hpp"
#include "hbundle/rep_forge.hpp"
#include "hbundle/suite.hpp"

namespace hbundle {

/// Chain parameters shared by the subcommands. Empty y means y_j = 1;
/// all-zero y selects the direct-sum realization.
struct ChainArgs {
  int n = 2;
  Direction direction = Direction::Up;
  int k0 = 1;
  int m = 2;
  double lambda = -1.3;
  std::vector<cplx> y;

  FiliformSpec spec() const;
  Json to_json() const;
};

/// Realizes the chain; all-zero y gives the y = 0 realization of the same chain.
RepRealization realize_chain(const ChainArgs& a);

/// Parses "1,0.7", "1+2i,-0.5i" into complex numbers.
std::vector<cplx> parse_complex_list(const std::string& text);
Direction parse_direction(const std::string& text);

struct CommandResult {
  Report report;
  std::vector<std::pair<std::string, std::string>> tables;  // file name, CSV text

  int exit_code() const { return report.passed() ? 0 : 1; }
};

CommandResult cmd_rep_validate(const ChainArgs& a);
CommandResult cmd_rep_classify(int k0, int m);
CommandResult cmd_rep_constants(const ChainArgs& a);

CommandResult cmd_gamma_check(const ChainArgs& a, int degree, double tol);

/// nu is the exponent of (1 - <z,w>); lambda = -nu n / (n + 1).
CommandResult cmd_kernel_gram(int n, int sym, double nu, int max_degree, double tol);
CommandResult cmd_kernel_threshold(int n, int sym, double lo, double hi, double step, int max_degree);
CommandResult cmd_kernel_difference(int sym0, Direction dir, double lambda, const std::vector<unsigned>& seeds,
                                    int points, double c_lo, double c_hi, int per_decade, double stability_factor);
CommandResult cmd_kernel_unitarity(const ChainArgs& a, int degree, double tol, double perturbation);

CommandResult cmd_cd_kerneldim(const ChainArgs& a, const Vec& w, int degree, double tol,
                               const std::vector<double>& radii);
CommandResult cmd_cd_homogeneity(const ChainArgs& a, int degree, double tol);
CommandResult cmd_cd_similarity(const ChainArgs& a, const std::vector<int>& degrees);

CommandResult cmd_suite(const SuiteConfig& cfg);

/// Exit code for a library error: 2 for precondition and usage errors, 3 for numeric breakdown.
int exit_code_for(Errc code);

}  // namespace hbundle
