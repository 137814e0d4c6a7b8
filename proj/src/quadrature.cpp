#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace skewflow {

double simpson(const std::function<double(double)>& f, double a, double b, double step) {
  if (!(b >= a)) throw std::invalid_argument("simpson: b < a");
  if (!(step > 0)) throw std::invalid_argument("simpson: step must be positive");
  if (a == b) return 0.0;
  long n = static_cast<long>(std::ceil((b - a) / step));
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0, even = 0;
  for (long k = 1; k < n; k += 2) odd += f(a + h * static_cast<double>(k));
  for (long k = 2; k < n; k += 2) even += f(a + h * static_cast<double>(k));
  return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double step) {
  QuadResult r;
  r.value = simpson(f, a, b, step);
  const double coarse = simpson(f, a, b, 2.0 * step);
  r.error = std::abs(r.value - coarse) / 15.0;
  return r;
}

PrefixIntegrator::PrefixIntegrator(std::function<double(double)> f, double step)
    : f_(std::move(f)), step_(step) {
  if (!(step_ > 0)) throw std::invalid_argument("PrefixIntegrator: step must be positive");
  prefix_.push_back(0.0);
}

void PrefixIntegrator::ensure(double upto) {
  // Extend the prefix table one panel at a time; each panel spans 2*step_.
  while (2.0 * step_ * static_cast<double>(prefix_.size() - 1) < upto) {
    const std::size_t k = prefix_.size() - 1;
    const double x0 = 2.0 * step_ * static_cast<double>(k);
    const double panel = (step_ / 3.0) * (f_(x0) + 4.0 * f_(x0 + step_) + f_(x0 + 2.0 * step_));
    prefix_.push_back(prefix_.back() + panel);
  }
}

double PrefixIntegrator::range(double a, double b) {
  if (!(a >= 0) || !(b >= a)) throw std::domain_error("signal integral outside domain");
  if (a == b) return 0.0;
  const double panel = 2.0 * step_;
  const auto k0 = static_cast<std::size_t>(std::ceil(a / panel));
  const auto k1 = static_cast<std::size_t>(std::floor(b / panel));
  if (k1 <= k0) {
    // Short span: integrate directly with a step no coarser than step_.
    return simpson(f_, a, b, step_);
  }
  ensure(static_cast<double>(k1) * panel);
  double total = prefix_[k1] - prefix_[k0];
  const double lo = static_cast<double>(k0) * panel;
  const double hi = static_cast<double>(k1) * panel;
  if (a < lo) total += simpson(f_, a, lo, step_);
  if (hi < b) total += simpson(f_, hi, b, step_);
  return total;
}

}  // namespace skewflow
