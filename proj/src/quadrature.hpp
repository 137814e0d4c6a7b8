#pragma once

#include <functional>
#include <vector>

namespace skewflow {

/// Step parameters for certification integrals.
struct QuadParams {
  double step = 0.01;
};

struct QuadResult {
  double value = 0;
  double error = 0;  // Richardson estimate from comparing step h against 2h
};

/// Composite Simpson with a fixed target step. The interval count is rounded
/// up to the next even number, so the effective step is <= step.
double simpson(const std::function<double(double)>& f, double a, double b, double step);

/// Simpson value at the given step plus a Richardson error estimate
/// |S(h) - S(2h)| / 15.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double step);

/// Cumulative Simpson table for one scalar function on [0, inf). Supports
/// O(1) subinterval queries once the prefix table covers the range; the table
/// grows lazily and append-only, so values never depend on query order.
class PrefixIntegrator {
 public:
  PrefixIntegrator(std::function<double(double)> f, double step);

  /// Integral over [a, b], 0 <= a <= b. Interior panels come from the prefix
  /// table; the two edge strips are integrated directly.
  double range(double a, double b);

  double step() const { return step_; }

 private:
  void ensure(double upto);

  std::function<double(double)> f_;
  double step_;              // node spacing; one Simpson panel spans 2*step_
  std::vector<double> prefix_;  // prefix_[k] = integral over [0, 2k*step_]
};

}  // namespace skewflow
