#pragma once

#include <vector>

#include "hbundle/hc_action.hpp"
#include "hbundle/sections.hpp"

namespace hbundle {

/// Multiplication by z_1, z_2 on a truncated Hilbert space of sections.
struct CDPair {
  SectionSpace space{2, 1, 0};
  std::vector<Mat> mult;     // M_i, compressed to degree <= max_degree
  std::vector<Mat> adjoint;  // Gram adjoints G^{-1} M_i^* G
  Mat gram;
};

CDPair build_pair(const Mat& gram, const SectionSpace& space);

struct KernelDimension {
  int dimension = 0;
  std::vector<double> singular_values;  // ascending, all values of the stacked operator's cokernel side
  double gap_ratio = 0.0;               // sigma above the cut over sigma below it
  bool certified = false;
};

/// Dimension of the joint kernel of (M_i^+ - conj(w_i)) on degree <= d, where
/// M_i - w_i maps degree <= d-1 into degree <= d exactly and adjoints are taken
/// in the Gram metric. Counts singular values below tol * sigma_max.
KernelDimension joint_kernel_dim(const CDPair& pair, const Vec& w, double tol = 1e-6);

struct HomogeneityReport {
  double skew_adjoint = 0.0;    // max normalized ||G pi + pi^* G||
  double commutation = 0.0;     // max ||[pi(X), M_i] + M_{tau_i(X)}|| below the top two degrees
  std::vector<double> per_element_commutation;
};

/// [pi(X), M_{z_i}] = -M_{tau_i}, with tau the p+ part of Ad(exp(-z))X.
HomogeneityReport homogeneity_check(const CDPair& pair, const InfinitesimalAction& act);

struct SimilarityReport {
  std::vector<int> degrees;
  std::vector<double> condition;  // of the identity map (deg <= d, G0) -> (deg <= d, Gy)
  std::vector<double> ratio_max;  // largest ||f||_y^2 / ||f||_0^2
  std::vector<double> ratio_min;
  double spread = 0.0;            // max condition / min condition
  double intertwining = 0.0;      // identity map against the shared multiplication matrices
};

SimilarityReport similarity_check(const Mat& g0, const Mat& gy, const SectionSpace& space,
                                  const std::vector<int>& degrees);

}  // namespace hbundle
