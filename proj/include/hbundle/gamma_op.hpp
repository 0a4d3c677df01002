#pragma once

#include <vector>

#include "hbundle/hc_action.hpp"
#include "hbundle/rep_forge.hpp"
#include "hbundle/sections.hpp"

namespace hbundle {

/// A path of consecutive links through the level grading; links[0] starts
/// at the lowest level.
struct LinkPath {
  std::vector<int> links;
  int from_level = 0;
  int to_level = 0;
};

struct GammaOperator {
  SectionSpace space{2, 1, 0};
  SectionOperator op;
  std::vector<LinkPath> paths;
  std::vector<cplx> constants;  // one per path
  int num_levels = 1;
};

/// P iota D for one link, as an operator on the full truncated section space:
/// sum_i rho~(F_i) t_i with t_i = sum_a B^{-1}(i,a) d/dz_a. When with_y the
/// coupling y of the link is included.
SpMat p_iota_d(const RepRealization& rep, const StructureContext& ctx, int link, bool with_y,
               const SectionSpace& space);

/// P iota D applied to a section supported on `level`, summed over the
/// links leaving that level (without y).
PolySection p_iota_d(const RepRealization& rep, const StructureContext& ctx, int level, const PolySection& f);

/// All link paths of length >= 1.
std::vector<LinkPath> link_paths(const RepRealization& rep);

/// Gamma = I + sum_path c_path (L_last ... L_first), L = p_iota_d with y.
GammaOperator assemble_gamma(const RepRealization& rep, const StructureContext& ctx,
                             const std::vector<LinkPath>& paths, const std::vector<cplx>& constants,
                             int max_degree);

/// Filiform Gamma from a constants table: c_{lj} on the path from level j to l.
GammaOperator build_gamma(const RepRealization& rep, const StructureContext& ctx, const ConstantsTable& table,
                          int max_degree);
/// Same, from an explicit lower-triangular constants matrix and without the regularity gate.
GammaOperator build_gamma(const RepRealization& rep, const StructureContext& ctx, const Mat& cjk,
                          int max_degree);

/// Finite Neumann series in the nilpotent part Gamma - I.
GammaOperator invert_gamma(const GammaOperator& gamma);

struct BlockGammaSolution {
  GammaOperator gamma;
  int unknowns = 0;
  int rank = 0;
  int nullity = 0;
  double residual = 0.0;         // relative least-squares residual of the generator equations
  double verify_residual = 0.0;  // intertwining residual over the full basis
  bool solved = false;
  bool underdetermined = false;
};

/// Solves Gamma pi_0(X) = pi_y(X) Gamma for the path constants, with X over
/// p+, p- and zhat, on columns of degree <= max_degree - 1. The minimum-norm
/// solution is returned together with the rank of the system, then checked
/// on the full basis. Throws NoSolution when the residual exceeds tol and
/// throw_on_failure is set.
BlockGammaSolution solve_block_gamma(const RepRealization& rep, const StructureContext& ctx, int max_degree,
                                     double tol = 1e-9, bool throw_on_failure = true);

}  // namespace hbundle
