#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hbundle/lie_core.hpp"
#include "hbundle/sl2_cg.hpp"

namespace hbundle {

/// Single chain V_0 -> V_1 -> ... -> V_m with V_j = chi_{lambda0 - j} (x) Sym^{k0 +- j}.
struct FiliformSpec {
  int n = 2;
  double lambda0 = 0.0;
  int k0 = 0;
  int m = 0;
  Direction direction = Direction::Up;
  std::vector<cplx> y;  // y_1 .. y_m, all nonzero
};

struct LevelComponent {
  int sym_power = 0;
  int multiplicity = 1;
};

/// y_j^{alpha beta}: C^{m_alpha} -> C^{m_beta}, from component `from` of
/// level `level - 1` to component `to` of level `level`.
struct BlockLink {
  int level = 1;
  int from = 0;
  int to = 0;
  Mat y;
};

struct BlockSpec {
  int n = 2;
  double lambda0 = 0.0;
  std::vector<std::vector<LevelComponent>> levels;
  std::vector<BlockLink> links;
};

BlockSpec to_block_spec(const FiliformSpec& spec);

/// One irreducible isotypic piece of V: C^multiplicity (x) Sym^sym_power.
struct FiberBlock {
  int level = 0;
  int component = 0;
  int sym_power = 0;
  int multiplicity = 1;
  int offset = 0;
  int dim = 0;
  double weight = 0.0;  // lambda0 - level
};

struct LinkRealization {
  BlockLink link;
  CGProjection projection;
  int from_block = 0;
  int to_block = 0;
};

/// Concrete matrices of a representation of k^C + p- on V = (+)_j V_j.
class RepRealization {
 public:
  int n = 2;
  double lambda0 = 0.0;
  BlockSpec spec;
  std::optional<FiliformSpec> filiform;
  std::vector<FiberBlock> blocks;
  std::vector<LinkRealization> links;
  std::vector<Mat> rho_minus;  // rho-(F_i), dim x dim
  int dim = 0;

  int num_levels() const { return static_cast<int>(spec.levels.size()); }
  int level_offset(int level) const;
  int level_dim(int level) const;

  /// Derivative of rho0 at a block-diagonal traceless (n+1)x(n+1) matrix.
  Mat rho0(const Mat& k_element) const;
  /// rho0 at a K^C group element diag(A, delta), principal branch.
  Mat rho0_group(const Mat& k_part) const;
  /// rho-(Y) for Y with F-coordinates c.
  Mat rho_minus_at(const Vec& c) const;
  /// rho~(F_i) of a link embedded in End(V), including (y (x) .) when with_y.
  Mat link_operator(int link, int i, bool with_y) const;
  /// The associated direct-sum representation (all y set to 0).
  RepRealization with_zero_y() const;
};

/// Builds matrices; throws InadmissibleChain if the assembled rho- does not
/// commute or if a link is not admissible.
RepRealization realize(const BlockSpec& spec);
RepRealization realize(const FiliformSpec& spec);
/// Same as realize() but skips the commutativity gate.
RepRealization realize_unchecked(const BlockSpec& spec);

struct ValidationReport {
  double eq1 = 0.0;
  double commutativity = 0.0;
  double grading = 0.0;
  double skew_hermitian = 0.0;
  bool pass = false;
};

ValidationReport validate(const RepRealization& rep, double tol = 1e-11);

struct ChainResult {
  std::string chain;  // e.g. "UD"
  double residual = 0.0;
  bool valid = false;
};

struct ChainClassification {
  int k0 = 0;
  int m = 0;
  std::vector<ChainResult> tested;
  std::vector<std::string> valid;
};

/// Brute force over all 2^m up/down chains from Sym^k0 on the C^2 ball.
ChainClassification classify_chains(int k0, int m, double tol = 1e-10);

struct CjExtraction {
  cplx scalar = 0.0;   // s with P iota rho0([Y,.]) = s rho~(Y)
  cplx c = 0.0;        // s + (lambda - j + 1) / (2n)
  double residual = 0.0;
};

/// Constant c_j of link j (1-based): P iota rho0([Y, .]) = s rho~(Y), c = s + (lambda - j + 1)/(2n).
CjExtraction extract_cj(const RepRealization& rep, int j, const StructureContext& ctx);

struct SharpFit {
  cplx u = 0.0;
  cplx v = 0.0;
  double residual = 0.0;
};

std::optional<SharpFit> check_sharp(const std::vector<cplx>& c, double tol = 1e-9);

struct IrregularFactor {
  int j = 0;
  int k = 0;
  int i = 0;
  cplx value = 0.0;
};

struct ConstantsTable {
  std::vector<cplx> c;
  std::optional<SharpFit> sharp_fit;
  cplx u = 0.0;
  cplx v = 0.0;
  double lambda = 0.0;
  int n = 2;
  int m = 0;
  Mat cjk;  // (m+1) x (m+1), lower triangular
  bool regular = true;
  std::vector<IrregularFactor> offending;
};

ConstantsTable cjk_table(cplx u, cplx v, double lambda, int n, int m, double zero_tol = 1e-12);

/// Extracts all c_j of a filiform realization and, if they are affine in j, builds the table.
ConstantsTable constants_for(const RepRealization& rep, const StructureContext& ctx);

/// The all-Up chain of Cartan products starting from Sym^k0.
FiliformSpec cartan_chain(int k0, int m, double lambda0, const std::vector<cplx>& y);

std::string chain_string(const FiliformSpec& spec);

}  // namespace hbundle
