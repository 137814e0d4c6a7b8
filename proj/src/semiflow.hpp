#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "linalg.hpp"
#include "projector_family.hpp"
#include "signal.hpp"

namespace skewflow {

/// Scalar carried as sign * exp(log_abs). sign == 0 means exactly zero.
struct LogScalar {
  double log_abs = 0;
  int sign = 0;
  static LogScalar zero() { return {0.0, 0}; }
  static LogScalar from_log(double la, int sg = 1) { return {la, sg}; }
  double value() const { return sign == 0 ? 0.0 : static_cast<double>(sign) * std::exp(log_abs); }
};

/// Diagonal cocycle as per-component log multipliers of Phi(t, s, x).
using DiagLogRule = std::function<std::vector<LogScalar>(double t, double s, const Signal& x)>;
/// General cocycle as a full matrix rule.
using MatrixRule = std::function<Matrix(double t, double s, const Signal& x)>;

/// A skew-evolution system: the translation semiflow on signals together
/// with a matrix-valued evolution cocycle over it. Immutable after
/// construction; evaluation is pure.
struct CocycleSpec {
  int dim = 1;
  std::string label;
  Signal base;  // base signal fed to grid sweeps
  DiagLogRule diag;
  MatrixRule matrix;
  bool as_printed = false;  // composition axioms known not to hold; kept verbatim
  std::string origin = "builtin";

  bool is_diagonal() const { return static_cast<bool>(diag); }
};

/// Throws std::domain_error unless t >= s >= 0.
void require_time_pair(double t, double s);

/// Translation semiflow: phi(t, s, x) = x_{t-s}.
Signal eval_semiflow(const CocycleSpec& sys, double t, double s, const Signal& x);

/// Phi(t, s, x) v in linear space. Overflow yields infinities, never silent
/// saturation.
VectorValue eval_cocycle(const CocycleSpec& sys, double t, double s, const Signal& x,
                         const VectorValue& v);

/// Transpose (adjoint) action on a dual vector.
DualVector adjoint_apply(const CocycleSpec& sys, double t, double s, const Signal& x,
                         const DualVector& w);

/// log || Phi(t,s,x) v ||_1, or -inf when the image is zero. Exact in log
/// space for diagonal systems.
double log_norm_apply(const CocycleSpec& sys, double t, double s, const Signal& x, const Vec& v);

/// log || Phi(t,s,x)^T w ||_inf for a dual probe w.
double log_norm_adjoint(const CocycleSpec& sys, double t, double s, const Signal& x, const Vec& w);

/// The lambda-shift: multiplies the cocycle by e^{-lambda (t-s)}.
CocycleSpec shift_cocycle(const CocycleSpec& sys, double lambda);

/// Subsystem with cocycle Phi(t,s,x) P_k(x). Stays in exact log space when
/// both the system and the family are diagonal.
CocycleSpec split_cocycle(const CocycleSpec& sys, const ProjectorFamily& fam, int k);

/// Worst point of one residual sweep.
struct ResidualReport {
  double worst = 0;
  Triple worst_point;
  int worst_probe = -1;
  bool overflow = false;
};

/// Composition residual max || Phi(t,s,phi(s,t0,x)) Phi(s,t0,x) v - Phi(t,t0,x) v ||
/// / max(1, || Phi(t,t0,x) v ||) over the grid.
ResidualReport cocycle_residual(const CocycleSpec& sys, const Grid& grid);

/// Identity residual max || Phi(t,t,x) v - v || / max(1, ||v||) over grid times.
ResidualReport identity_residual(const CocycleSpec& sys, const Grid& grid);

}  // namespace skewflow
