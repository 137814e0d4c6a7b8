#include "bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skewflow {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

BoundSpec BoundSpec::constant(double c) {
  if (!(c > 0)) throw std::invalid_argument("BoundSpec: constant must be positive");
  BoundSpec b;
  b.form_ = Form::Constant;
  b.c_ = c;
  b.desc_ = format_number(c);
  return b;
}

BoundSpec BoundSpec::exponential(double c, double a) {
  if (!(c > 0)) throw std::invalid_argument("BoundSpec: coefficient must be positive");
  BoundSpec b;
  b.form_ = Form::Exponential;
  b.c_ = c;
  b.a_ = a;
  b.desc_ = (c == 1.0 ? std::string() : format_number(c) + "*") + "exp(" + format_number(a) + "*t)";
  return b;
}

BoundSpec BoundSpec::tabulated(PiecewiseLinear table, bool step_interpolation,
                               std::string description) {
  BoundSpec b;
  b.form_ = step_interpolation ? Form::TabulatedStep : Form::TabulatedLinear;
  b.table_ = std::make_shared<const PiecewiseLinear>(std::move(table));
  b.desc_ = std::move(description);
  return b;
}

BoundSpec BoundSpec::rule(std::function<double(double)> fn, std::string description) {
  BoundSpec b;
  b.form_ = Form::Rule;
  b.fn_ = std::move(fn);
  b.desc_ = std::move(description);
  return b;
}

double BoundSpec::operator()(double t) const {
  double v = 0;
  switch (form_) {
    case Form::Constant:
      v = c_;
      break;
    case Form::Exponential:
      v = c_ * std::exp(a_ * t);
      break;
    case Form::TabulatedLinear:
      v = (*table_)(t);
      break;
    case Form::TabulatedStep: {
      const auto& nodes = table_->nodes();
      if (t < nodes.front().first || t > nodes.back().first)
        throw std::domain_error("BoundSpec: argument outside table range");
      double val = nodes.front().second;
      for (const auto& nd : nodes) {
        if (nd.first > t) break;
        val = nd.second;
      }
      v = val;
      break;
    }
    case Form::Rule:
      v = fn_(t);
      break;
  }
  if (!(v > 0)) throw std::domain_error("BoundSpec: bound must evaluate positive, got " +
                                        format_number(v) + " at t=" + format_number(t));
  return v;
}

double BoundSpec::log_value(double t) const {
  if (form_ == Form::Exponential) return std::log(c_) + a_ * t;
  return std::log((*this)(t));
}

}  // namespace skewflow
