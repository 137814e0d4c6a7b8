#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "defaults.hpp"
#include "quadrature.hpp"

namespace skewflow {

/// Continuous nonnegative function on [0, inf), the moving coefficient of a
/// skew-evolution system. Signals are immutable; translation shares the base
/// rule (and its integral table) and only moves the offset.
class Signal {
 public:
  Signal() = default;
  Signal(std::function<double(double)> rule, std::string label);

  double operator()(double t) const;

  /// The translate x_a(t) = x(a + t), a >= 0.
  Signal translated(double a) const;

  double offset() const { return offset_; }
  const std::string& label() const { return label_; }
  bool valid() const { return static_cast<bool>(rule_); }

  /// Integral of this signal over [a, b] relative to its own time axis,
  /// computed against the shared base prefix table.
  double integral(double a, double b) const;

 private:
  std::function<double(double)> rule_;  // base rule, before offset
  double offset_ = 0;
  std::string label_;
  std::shared_ptr<PrefixIntegrator> table_;
};

Signal translate(const Signal& x, double a);

constexpr const char* kTranslateErr = "translate: negative shift";

/// Truncation and sampling parameters for the metric on the signal space.
struct MetricParams {
  int n_terms = defaults::metric_terms;
  int samples_per_unit = defaults::metric_samples_per_unit;
};

struct DistanceResult {
  double value = 0;
  double tail_bound = 0;  // bound on the dropped series tail, 2^-n_terms
};

/// d(x,y) = sum_{n>=1} 2^-n d_n/(1+d_n) with d_n = sup_{[0,n]} |x-y|,
/// the sup estimated by dense uniform sampling.
DistanceResult distance(const Signal& x, const Signal& y, const MetricParams& p = {});

/// Piecewise-linear node function, shared by the gallery coefficient
/// functions and the DSL `pwl` tables. Node times must be strictly
/// increasing; evaluation outside the node range is a domain error.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> nodes);

  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& nodes() const { return nodes_; }

 private:
  std::vector<std::pair<double, double>> nodes_;
};

}  // namespace skewflow
