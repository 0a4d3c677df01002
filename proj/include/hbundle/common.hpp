#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hbundle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;

inline constexpr cplx I_unit{0.0, 1.0};

/// Failure categories. The CLI maps these onto its exit codes.
enum class Errc {
  DimensionMismatch,
  PreconditionViolated,
  InadmissibleChain,
  NotInBigCell,
  BranchCut,
  NotProportional,
  NoSolution,
  IndefiniteGram,
  DegenerateKilling,
  NumericBreakdown,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace hbundle
