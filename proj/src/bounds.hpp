#pragma once

#include <functional>
#include <memory>
#include <string>

#include "signal.hpp"

namespace skewflow {

/// Time-dependent bound function N : [0, inf) -> (0, inf). Closed under the
/// shapes the checks need: constants, exponentials c*e^{a t}, tabulated node
/// functions, and opaque rules (used by the gallery coefficient functions).
class BoundSpec {
 public:
  enum class Form { Constant, Exponential, TabulatedStep, TabulatedLinear, Rule };

  BoundSpec() : BoundSpec(constant(1.0)) {}

  static BoundSpec constant(double c);
  static BoundSpec exponential(double c, double a);  // c * e^{a t}
  static BoundSpec tabulated(PiecewiseLinear table, bool step_interpolation,
                             std::string description);
  static BoundSpec rule(std::function<double(double)> fn, std::string description);

  /// N(t); throws std::domain_error if the evaluated value is not positive.
  double operator()(double t) const;

  /// log N(t); exact for exponential form, otherwise log of the value.
  double log_value(double t) const;

  Form form() const { return form_; }
  double c() const { return c_; }
  double a() const { return a_; }
  const std::string& description() const { return desc_; }

 private:
  Form form_ = Form::Constant;
  double c_ = 1.0;
  double a_ = 0.0;
  std::shared_ptr<const PiecewiseLinear> table_;
  std::function<double(double)> fn_;
  std::string desc_;
};

/// Rate exponent per unit time; the sign encodes the regime.
struct RateSpec {
  double rho = 0;
};

}  // namespace skewflow
