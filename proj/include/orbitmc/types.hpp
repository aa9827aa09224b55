#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitmc {

/// Dense row-major matrix; every kernel in the library is stored this way.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

/// Numerical tolerances shared by every module.
///
/// `probability` governs row sums, stationarity and reversibility checks;
/// `algebraic` governs matrix identities (idempotence, sandwich cross-checks);
/// `clamp` is the largest negative drift silently clamped to zero when a
/// diagonal is filled in as one minus the off-diagonal row sum;
/// `support` separates structural zeros from round-off in KL sums;
/// `membership` is the residual below which a kernel is declared G-invariant.
struct Tolerances {
  double probability = 1e-10;
  double algebraic = 1e-12;
  double clamp = 1e-12;
  double support = 1e-15;
  double membership = 1e-8;
};

/// Process-wide tolerance record, read by all library functions. Change it
/// only before any work starts; it is not synchronised.
const Tolerances& tolerances();
void set_tolerances(const Tolerances& tol);

enum class ErrorCode {
  NonStochastic,
  DimensionMismatch,
  ReferenceMismatch,
  InvalidDistribution,
  InvalidPartition,
  InvalidArgument,
  AlphaOutOfRange,
  NotReversible,
  NotStationary,
  AllSingletons,
  NotSorted,
  ThetaDegenerate,
  NotCentered,
  SingularFundamentalMatrix,
  DegenerateGap,
  SupportViolation,
  QNotInvariant,
  MassNotDominant,
  WrongPartitionShape,
  NegativeInducedEntry,
  NotFactorable,
  BadShape,
  TooLarge,
  NoConvergence,
  ConfigParse,
  FileNotFound,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orbitmc
