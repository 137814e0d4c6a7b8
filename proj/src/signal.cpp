#include "signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skewflow {

Signal::Signal(std::function<double(double)> rule, std::string label)
    : rule_(std::move(rule)), label_(std::move(label)) {
  table_ = std::make_shared<PrefixIntegrator>(rule_, defaults::signal_step);
}

double Signal::operator()(double t) const {
  if (t < 0) throw std::domain_error("signal evaluated at negative time");
  return rule_(offset_ + t);
}

Signal Signal::translated(double a) const {
  if (a < 0) throw std::domain_error(kTranslateErr);
  Signal y;
  y.rule_ = rule_;
  y.offset_ = offset_ + a;
  y.label_ = label_;
  y.table_ = table_;
  return y;
}

double Signal::integral(double a, double b) const {
  if (!(a >= 0) || !(b >= a)) throw std::domain_error("signal integral outside domain");
  return table_->range(offset_ + a, offset_ + b);
}

Signal translate(const Signal& x, double a) { return x.translated(a); }

DistanceResult distance(const Signal& x, const Signal& y, const MetricParams& p) {
  if (p.n_terms < 1) throw std::invalid_argument("distance: n_terms must be >= 1");
  if (p.samples_per_unit < 2) throw std::invalid_argument("distance: samples_per_unit must be >= 2");
  DistanceResult r;
  double dn = 0;  // running sup over [0, n]
  double weight = 1.0;
  for (int n = 1; n <= p.n_terms; ++n) {
    // Refine the sup on [n-1, n]; d_n is nondecreasing in n.
    for (int j = 0; j <= p.samples_per_unit; ++j) {
      const double t =
          static_cast<double>(n - 1) + static_cast<double>(j) / static_cast<double>(p.samples_per_unit);
      dn = std::max(dn, std::abs(x(t) - y(t)));
    }
    weight *= 0.5;
    r.value += weight * dn / (1.0 + dn);
  }
  r.tail_bound = weight;  // each dropped summand is < 2^-n
  return r;
}

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> nodes)
    : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("PiecewiseLinear: need at least two nodes");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i].first > nodes_[i - 1].first))
      throw std::invalid_argument("PiecewiseLinear: node times must be strictly increasing");
}

double PiecewiseLinear::operator()(double t) const {
  if (nodes_.empty()) throw std::logic_error("PiecewiseLinear: empty table");
  if (t < nodes_.front().first || t > nodes_.back().first)
    throw std::domain_error("PiecewiseLinear: argument outside node range");
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t,
                             [](const auto& nd, double v) { return nd.first < v; });
  if (it != nodes_.end() && it->first == t) return it->second;  // exact node hit
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

}  // namespace skewflow
