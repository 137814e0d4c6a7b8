#include "semiflow.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace skewflow {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_abs_or_neg_inf(double v) { return v == 0.0 ? kNegInf : std::log(std::abs(v)); }

/// logsumexp over finite entries; empty -> -inf.
double log_sum_exp(const std::vector<double>& ls) {
  double m = kNegInf;
  for (double l : ls) m = std::max(m, l);
  if (std::isinf(m) && m < 0) return kNegInf;
  double s = 0;
  for (double l : ls) s += std::exp(l - m);
  return m + std::log(s);
}

std::vector<LogScalar> diag_of(const CocycleSpec& sys, double t, double s, const Signal& x) {
  return sys.diag(t, s, x);
}

Matrix matrix_of(const CocycleSpec& sys, double t, double s, const Signal& x) {
  if (sys.is_diagonal()) {
    const auto d = diag_of(sys, t, s, x);
    Matrix m(sys.dim);
    for (int i = 0; i < sys.dim; ++i) m(i, i) = d[static_cast<std::size_t>(i)].value();
    return m;
  }
  return sys.matrix(t, s, x);
}

}  // namespace

void require_time_pair(double t, double s) {
  if (!(t >= s) || !(s >= 0)) throw std::domain_error("time pair requires t >= s >= 0");
}

Signal eval_semiflow(const CocycleSpec& sys, double t, double s, const Signal& x) {
  (void)sys;  // translation is the only semiflow in scope
  require_time_pair(t, s);
  return translate(x, t - s);
}

VectorValue eval_cocycle(const CocycleSpec& sys, double t, double s, const Signal& x,
                         const VectorValue& v) {
  require_time_pair(t, s);
  if (v.dim() != sys.dim) throw std::invalid_argument("eval_cocycle: dimension mismatch");
  if (sys.is_diagonal()) {
    const auto d = diag_of(sys, t, s, x);
    VectorValue r;
    r.c.resize(v.c.size());
    for (int i = 0; i < sys.dim; ++i) {
      const auto& m = d[static_cast<std::size_t>(i)];
      r.c[static_cast<std::size_t>(i)] =
          m.sign == 0 ? 0.0 : v.c[static_cast<std::size_t>(i)] * m.value();
    }
    return r;
  }
  return VectorValue(apply(sys.matrix(t, s, x), v.c));
}

DualVector adjoint_apply(const CocycleSpec& sys, double t, double s, const Signal& x,
                         const DualVector& w) {
  require_time_pair(t, s);
  if (w.dim() != sys.dim) throw std::invalid_argument("adjoint_apply: dimension mismatch");
  if (sys.is_diagonal()) {
    // Diagonal matrices are self-transpose.
    const auto d = diag_of(sys, t, s, x);
    DualVector r;
    r.c.resize(w.c.size());
    for (int i = 0; i < sys.dim; ++i)
      r.c[static_cast<std::size_t>(i)] =
          w.c[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)].value();
    return r;
  }
  return DualVector(apply_transpose(sys.matrix(t, s, x), w.c));
}

double log_norm_apply(const CocycleSpec& sys, double t, double s, const Signal& x, const Vec& v) {
  require_time_pair(t, s);
  if (static_cast<int>(v.size()) != sys.dim)
    throw std::invalid_argument("log_norm_apply: dimension mismatch");
  if (sys.is_diagonal()) {
    const auto d = diag_of(sys, t, s, x);
    std::vector<double> terms;
    for (int i = 0; i < sys.dim; ++i) {
      const auto& m = d[static_cast<std::size_t>(i)];
      const double vi = v[static_cast<std::size_t>(i)];
      if (m.sign == 0 || vi == 0.0) continue;
      terms.push_back(m.log_abs + std::log(std::abs(vi)));
    }
    return log_sum_exp(terms);
  }
  return log_abs_or_neg_inf(norm_l1(apply(sys.matrix(t, s, x), v)));
}

double log_norm_adjoint(const CocycleSpec& sys, double t, double s, const Signal& x, const Vec& w) {
  require_time_pair(t, s);
  if (static_cast<int>(w.size()) != sys.dim)
    throw std::invalid_argument("log_norm_adjoint: dimension mismatch");
  if (sys.is_diagonal()) {
    const auto d = diag_of(sys, t, s, x);
    double m = kNegInf;
    for (int i = 0; i < sys.dim; ++i) {
      const auto& mi = d[static_cast<std::size_t>(i)];
      const double wi = w[static_cast<std::size_t>(i)];
      if (mi.sign == 0 || wi == 0.0) continue;
      m = std::max(m, mi.log_abs + std::log(std::abs(wi)));
    }
    return m;
  }
  return log_abs_or_neg_inf(norm_linf(apply_transpose(sys.matrix(t, s, x), w)));
}

CocycleSpec shift_cocycle(const CocycleSpec& sys, double lambda) {
  CocycleSpec out = sys;
  out.label = sys.label + "~shift(" + std::to_string(lambda) + ")";
  if (sys.is_diagonal()) {
    const DiagLogRule inner = sys.diag;
    out.diag = [inner, lambda](double t, double s, const Signal& x) {
      auto d = inner(t, s, x);
      for (auto& m : d)
        if (m.sign != 0) m.log_abs += -lambda * (t - s);
      return d;
    };
  } else {
    const MatrixRule inner = sys.matrix;
    out.matrix = [inner, lambda](double t, double s, const Signal& x) {
      Matrix m = inner(t, s, x);
      const double f = std::exp(-lambda * (t - s));
      for (auto& a : m.a) a *= f;
      return m;
    };
  }
  return out;
}

CocycleSpec split_cocycle(const CocycleSpec& sys, const ProjectorFamily& fam, int k) {
  if (fam.dim() != sys.dim) throw std::invalid_argument("split_cocycle: dimension mismatch");
  if (k < 1 || k > fam.count()) throw std::invalid_argument("split_cocycle: projector index");
  CocycleSpec out = sys;
  out.label = sys.label + "~P" + std::to_string(k);
  if (sys.is_diagonal() && fam.assignment()) {
    const auto assign = *fam.assignment();
    const DiagLogRule inner = sys.diag;
    out.diag = [inner, assign, k](double t, double s, const Signal& x) {
      auto d = inner(t, s, x);
      for (std::size_t i = 0; i < d.size(); ++i)
        if (assign[i] != k) d[i] = LogScalar::zero();
      return d;
    };
    return out;
  }
  const CocycleSpec base = sys;
  out.diag = nullptr;
  out.matrix = [base, fam, k](double t, double s, const Signal& x) {
    Matrix phi = base.is_diagonal() ? [&] {
      const auto d = base.diag(t, s, x);
      Matrix m(base.dim);
      for (int i = 0; i < base.dim; ++i) m(i, i) = d[static_cast<std::size_t>(i)].value();
      return m;
    }()
                                    : base.matrix(t, s, x);
    return phi * fam.projector(k, x);
  };
  return out;
}

namespace {

struct ScaledDiff {
  double residual = 0;
  bool overflow = false;
};

/// || a - b ||_1 / max(1, ||b||_1) where a, b are given componentwise in log
/// form; computed with a common scale so huge exponents stay finite.
ScaledDiff scaled_l1_diff(const std::vector<LogScalar>& a, const std::vector<LogScalar>& b) {
  double peak = kNegInf;
  for (const auto& x : a)
    if (x.sign != 0) peak = std::max(peak, x.log_abs);
  for (const auto& x : b)
    if (x.sign != 0) peak = std::max(peak, x.log_abs);
  ScaledDiff out;
  if (std::isinf(peak) && peak < 0) return out;  // both zero
  const double shift = peak > 600.0 ? peak - 600.0 : 0.0;
  double num = 0, den_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double av = a[i].sign == 0 ? 0.0 : a[i].sign * std::exp(a[i].log_abs - shift);
    const double bv = b[i].sign == 0 ? 0.0 : b[i].sign * std::exp(b[i].log_abs - shift);
    num += std::abs(av - bv);
    den_b += std::abs(bv);
  }
  const double one_scaled = std::exp(-shift);  // may underflow to 0 for huge peaks
  out.residual = num / std::max(one_scaled, den_b);
  if (!std::isfinite(out.residual)) out.overflow = true;
  return out;
}

}  // namespace

ResidualReport cocycle_residual(const CocycleSpec& sys, const Grid& grid) {
  if (grid.triples.empty() || grid.probes.empty())
    throw std::invalid_argument("cocycle_residual: empty grid or probe set");
  ResidualReport rep;
  const Signal& x = sys.base;
  for (const auto& tr : grid.triples) {
    const Signal y = translate(x, tr.s - tr.t0);
    if (sys.is_diagonal()) {
      const auto outer = sys.diag(tr.t, tr.s, y);
      const auto inner = sys.diag(tr.s, tr.t0, x);
      const auto direct = sys.diag(tr.t, tr.t0, x);
      for (std::size_t p = 0; p < grid.probes.size(); ++p) {
        const Vec& v = grid.probes[p];
        std::vector<LogScalar> a(v.size()), b(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
          const double lv = v[i] == 0.0 ? kNegInf : std::log(std::abs(v[i]));
          const int sv = v[i] == 0.0 ? 0 : (v[i] > 0 ? 1 : -1);
          if (sv == 0 || outer[i].sign == 0 || inner[i].sign == 0)
            a[i] = LogScalar::zero();
          else
            a[i] = {outer[i].log_abs + inner[i].log_abs + lv, outer[i].sign * inner[i].sign * sv};
          if (sv == 0 || direct[i].sign == 0)
            b[i] = LogScalar::zero();
          else
            b[i] = {direct[i].log_abs + lv, direct[i].sign * sv};
        }
        const auto d = scaled_l1_diff(a, b);
        if (d.overflow) rep.overflow = true;
        if (d.residual > rep.worst) {
          rep.worst = d.residual;
          rep.worst_point = tr;
          rep.worst_probe = static_cast<int>(p);
        }
      }
    } else {
      const Matrix outer = sys.matrix(tr.t, tr.s, y);
      const Matrix inner = sys.matrix(tr.s, tr.t0, x);
      const Matrix direct = sys.matrix(tr.t, tr.t0, x);
      const Matrix comp = outer * inner;
      for (std::size_t p = 0; p < grid.probes.size(); ++p) {
        const Vec& v = grid.probes[p];
        const Vec av = apply(comp, v);
        const Vec bv = apply(direct, v);
        double num = 0;
        for (std::size_t i = 0; i < v.size(); ++i) num += std::abs(av[i] - bv[i]);
        const double res = num / std::max(1.0, norm_l1(bv));
        if (!std::isfinite(res)) rep.overflow = true;
        if (res > rep.worst) {
          rep.worst = res;
          rep.worst_point = tr;
          rep.worst_probe = static_cast<int>(p);
        }
      }
    }
  }
  return rep;
}

ResidualReport identity_residual(const CocycleSpec& sys, const Grid& grid) {
  if (grid.triples.empty() || grid.probes.empty())
    throw std::invalid_argument("identity_residual: empty grid or probe set");
  ResidualReport rep;
  const Signal& x = sys.base;
  for (const auto& tr : grid.triples) {
    for (std::size_t p = 0; p < grid.probes.size(); ++p) {
      VectorValue v{grid.probes[p]};
      const VectorValue img = eval_cocycle(sys, tr.t, tr.t, x, v);
      double num = 0;
      for (std::size_t i = 0; i < v.c.size(); ++i) num += std::abs(img.c[i] - v.c[i]);
      const double res = num / std::max(1.0, norm_l1(v.c));
      if (!std::isfinite(res)) rep.overflow = true;
      if (res > rep.worst) {
        rep.worst = res;
        rep.worst_point = {tr.t, tr.t, tr.t};
        rep.worst_probe = static_cast<int>(p);
      }
    }
  }
  return rep;
}

}  // namespace skewflow
