#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cqg {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::RowVectorXcd;

/// Numerical thresholds used throughout. `residual` accepts accumulated
/// floating-point error in algebraic identities; `zero` decides whether an
/// element is semantically zero (via operator norm); `rank_cutoff` is the
/// singular-value cutoff for rank/span decisions.
struct Tolerances {
  double residual = 1e-9;
  double zero = 1e-7;
  double rank_cutoff = 1e-10;
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input shapes: mismatched parents, bad tables, wrong dimensions.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input violating its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree, or a law that
/// must hold for every valid input failed. Signals a bug or corrupted data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but failed residual re-verification; carries a JSON report.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::string report_json)
      : Error(what), report_json_(std::move(report_json)) {}
  const std::string& report_json() const { return report_json_; }

 private:
  std::string report_json_;
};

}  // namespace cqg
