#pragma once

#include <array>
#include <string>
#include <vector>

#include "hbundle/report.hpp"
#include "hbundle/rep_forge.hpp"

namespace hbundle {

/// Parameters of the acceptance battery. Serializable; identical configs
/// give byte-identical reports.
struct SuiteConfig {
  std::string schema_version = kSchemaVersion;

  // default chain for pipeline checks
  double chain_lambda = -1.3;
  int chain_k0 = 1;
  int chain_m = 2;
  std::vector<std::array<double, 2>> chain_y = {{1.0, 0.0}, {0.7, 0.0}};

  double structure_tol = 1e-13;

  int cg_max_k = 8;
  double cg_equivariance_tol = 1e-12;
  double cg_coisometry_tol = 1e-14;

  std::vector<int> classify_k0 = {2, 3, 4};
  std::vector<int> classify_m = {2, 3};
  double mixed_min_residual = 1e-3;

  std::vector<double> fit_lambdas = {-2.1, -1.3, -0.7, 0.4, 1.9};
  double fit_tol = 1e-9;
  double disc_tol = 1e-10;

  unsigned fd_seed = 7;
  int fd_samples = 20;
  double fd_group_radius = 0.3;
  double fd_point_radius = 0.5;
  double fd_tol = 1e-6;
  double fd_min_order = 1.9;

  int intertwining_degree = 5;
  std::vector<double> intertwining_lambdas = {-1.3, -0.55, 0.8};
  double intertwining_tol = 1e-8;
  double perturbation = 0.1;
  double negative_control_min = 1e-2;

  int homomorphism_degree = 4;
  double homomorphism_tol = 1e-10;

  double pochhammer_nu = 3.0;
  int kernel_max_degree = 8;
  double pochhammer_tol = 1e-10;
  double invariance_tol = 1e-10;
  std::vector<int> threshold_sym_powers = {0, 1, 2, 3};
  double threshold_lo = -2.5;
  double threshold_hi = 0.5;
  double threshold_step = 0.1;

  int unitarity_degree = 5;
  double unitarity_tol = 1e-8;

  std::vector<unsigned> diff_seeds = {7, 11, 13};
  int diff_points = 20;
  double diff_lambda = -1.0;
  double diff_c_lo = 1e-3;
  double diff_c_hi = 1e3;
  int diff_per_decade = 8;
  double psd_tol = 1e-10;
  double stability_factor = 2.0;

  int cd_degree = 8;
  std::vector<double> cd_radii = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  double kernel_dim_tol = 1e-6;
  double homogeneity_tol = 1e-8;
  std::vector<int> similarity_degrees = {1, 2, 3, 4, 5, 6, 7, 8};
};

Json to_json(const SuiteConfig& c);
SuiteConfig suite_config_from_json(const Json& j);

FiliformSpec default_chain(const SuiteConfig& c);
std::vector<double> lambda_grid(double lo, double hi, double step);

struct CriterionOutcome {
  int id = 0;
  std::string title;
  std::vector<CheckRecord> records;
  bool pass = false;
  double seconds = 0.0;  // kept out of reports
  double time_limit = 0.0;  // 0 when the criterion has no runtime bound
  std::vector<std::pair<std::string, std::string>> tables;  // CSV name, content
};

/// Criteria 1..12 of the battery; id outside that range throws.
CriterionOutcome run_criterion(int id, const SuiteConfig& cfg);
inline constexpr int kNumCriteria = 12;

struct SuiteResult {
  Report report;
  std::vector<CriterionOutcome> criteria;
  double seconds = 0.0;
};

SuiteResult run_suite(const SuiteConfig& cfg);

}  // namespace hbundle
