#include "certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace skewflow {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

bool is_zero_log(double l) { return std::isinf(l) && l < 0; }

struct Margin {
  double violation = 0;  // (lhs - rhs) / max(1, rhs)
  double log_ratio = 0;  // log(lhs / rhs)
};

/// Compare lhs <= rhs given as logs, stably for huge or vanishing values.
Margin compare_logs(double log_lhs, double log_rhs) {
  Margin m;
  const bool lz = is_zero_log(log_lhs), rz = is_zero_log(log_rhs);
  if (lz && rz) return {0.0, 0.0};
  if (lz) {
    m.log_ratio = kNegInf;
    m.violation = -std::exp(std::min(log_rhs, 0.0));
    return m;
  }
  if (rz) {
    m.log_ratio = kPosInf;
    m.violation = std::exp(log_lhs);  // may overflow to inf, reported as such
    return m;
  }
  m.log_ratio = log_lhs - log_rhs;
  m.violation = log_rhs >= 0 ? std::expm1(m.log_ratio) : std::exp(log_rhs) * std::expm1(m.log_ratio);
  return m;
}

/// Per-time snapshot of the cocycle so probe loops do not re-evaluate rules.
struct Snapshot {
  bool diagonal = false;
  std::vector<LogScalar> d;
  Matrix m;
};

Snapshot snap(const CocycleSpec& sys, double t, double s, const Signal& x) {
  Snapshot sn;
  if (sys.is_diagonal()) {
    sn.diagonal = true;
    sn.d = sys.diag(t, s, x);
  } else {
    sn.m = sys.matrix(t, s, x);
  }
  return sn;
}

double snap_log_norm(const Snapshot& sn, const Vec& v) {
  if (sn.diagonal) {
    double peak = kNegInf;
    std::vector<double> terms;
    terms.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sn.d[i].sign == 0 || v[i] == 0.0) continue;
      terms.push_back(sn.d[i].log_abs + std::log(std::abs(v[i])));
      peak = std::max(peak, terms.back());
    }
    if (terms.empty()) return kNegInf;
    double s = 0;
    for (double l : terms) s += std::exp(l - peak);
    return peak + std::log(s);
  }
  const double n = norm_l1(apply(sn.m, v));
  return n == 0.0 ? kNegInf : std::log(n);
}

double snap_log_norm_dual(const Snapshot& sn, const Vec& w) {
  if (sn.diagonal) {
    double peak = kNegInf;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (sn.d[i].sign == 0 || w[i] == 0.0) continue;
      peak = std::max(peak, sn.d[i].log_abs + std::log(std::abs(w[i])));
    }
    return peak;
  }
  const double n = norm_linf(apply_transpose(sn.m, w));
  return n == 0.0 ? kNegInf : std::log(n);
}

struct CertBuilder {
  Certificate cert;
  double worst_norm = -kPosInf;
  bool any = false;

  explicit CertBuilder(std::string kind, const Grid& grid, double tol) {
    cert.kind = std::move(kind);
    cert.tolerance = tol;
    cert.grid = grid.params;
    cert.probe_count = static_cast<int>(grid.probes.size());
    cert.hypotheses.push_back("measurability assumed (sm/ssm)");
  }

  void as_printed_note(const CocycleSpec& sys) {
    if (sys.as_printed) cert.hypotheses.push_back("as_printed: composition axioms not assumed");
  }

  void record(const std::string& branch, const Margin& m, const Triple& tr, int probe) {
    any = true;
    auto [it, fresh] = cert.branch_violations.try_emplace(branch, m.violation);
    if (!fresh) it->second = std::max(it->second, m.violation);
    if (!std::isfinite(m.violation)) cert.overflow = true;
    if (m.violation > worst_norm) worst_norm = m.violation;
    if (m.log_ratio > cert.worst_log_ratio || !any_point_) {
      cert.worst_log_ratio = m.log_ratio;
      cert.worst_point = {tr.t, tr.s, tr.t0, probe, branch};
      any_point_ = true;
    }
  }

  Certificate finish() {
    cert.worst_violation = any ? worst_norm : 0.0;
    cert.pass = !cert.precondition_failed && !cert.overflow && cert.worst_violation <= cert.tolerance;
    return cert;
  }

 private:
  bool any_point_ = false;
};

void precheck_family(CertBuilder& b, const ProjectorFamily& fam, const CocycleSpec& sys,
                     const Grid& grid, double tol) {
  const ComplianceReport rep = check_family(fam, sys, grid, tol);
  if (!rep.pass) {
    b.cert.precondition_failed = true;
    b.cert.notes.push_back("projector family incompatible with the system; worst residual " +
                           std::to_string(rep.worst()));
  }
}

/// Simpson sum over pre-sampled values at n+1 uniform nodes, n a multiple of 4,
/// plus the Richardson estimate against the stride-2 subsample.
QuadResult sampled_simpson(const std::vector<double>& vals, double h) {
  const std::size_t n = vals.size() - 1;
  double odd = 0, even = 0;
  for (std::size_t k = 1; k < n; k += 2) odd += vals[k];
  for (std::size_t k = 2; k < n; k += 2) even += vals[k];
  const double fine = (h / 3.0) * (vals.front() + vals.back() + 4.0 * odd + 2.0 * even);
  double odd2 = 0, even2 = 0;
  for (std::size_t k = 2; k < n; k += 4) odd2 += vals[k];
  for (std::size_t k = 4; k < n; k += 4) even2 += vals[k];
  const double coarse =
      (2.0 * h / 3.0) * (vals.front() + vals.back() + 4.0 * odd2 + 2.0 * even2);
  return {fine, std::abs(fine - coarse) / 15.0};
}

long nodes_multiple_of_4(double len, double step) {
  long n = static_cast<long>(std::ceil(len / step));
  if (n < 4) n = 4;
  if (n % 4 != 0) n += 4 - (n % 4);
  return n;
}

}  // namespace

Certificate check_forward_bound(const CocycleSpec& sys, const BoundSpec& N, RateSpec rate,
                                const Grid& grid, double tol) {
  if (grid.triples.empty()) throw std::invalid_argument("check_forward_bound: empty grid");
  CertBuilder b("forward_bound", grid, tol);
  b.as_printed_note(sys);
  b.cert.constants["N"] = N.description();
  b.cert.constants["rho"] = std::to_string(rate.rho);
  const Signal& x = sys.base;
  for (const auto& tr : grid.triples) {
    const Snapshot at_t = snap(sys, tr.t, tr.t0, x);
    const Snapshot at_s = snap(sys, tr.s, tr.t0, x);
    const double bound = N.log_value(tr.s) + rate.rho * (tr.t - tr.s);
    for (std::size_t p = 0; p < grid.probes.size(); ++p) {
      const Margin m = compare_logs(snap_log_norm(at_t, grid.probes[p]),
                                    bound + snap_log_norm(at_s, grid.probes[p]));
      b.record("forward", m, tr, static_cast<int>(p));
    }
  }
  return b.finish();
}

Certificate check_backward_bound(const CocycleSpec& sys, const BoundSpec& N, RateSpec rate,
                                 const Grid& grid, double tol) {
  if (grid.triples.empty()) throw std::invalid_argument("check_backward_bound: empty grid");
  CertBuilder b("backward_bound", grid, tol);
  b.as_printed_note(sys);
  b.cert.constants["N"] = N.description();
  b.cert.constants["rho"] = std::to_string(rate.rho);
  const Signal& x = sys.base;
  for (const auto& tr : grid.triples) {
    const Snapshot at_t = snap(sys, tr.t, tr.t0, x);
    const Snapshot at_s = snap(sys, tr.s, tr.t0, x);
    const double bound = N.log_value(tr.t) + rate.rho * (tr.t - tr.s);
    for (std::size_t p = 0; p < grid.probes.size(); ++p) {
      const Margin m = compare_logs(snap_log_norm(at_s, grid.probes[p]),
                                    bound + snap_log_norm(at_t, grid.probes[p]));
      b.record("backward", m, tr, static_cast<int>(p));
    }
  }
  return b.finish();
}

Certificate check_dichotomy(const CocycleSpec& sys, const ProjectorFamily& fam,
                            const BoundSpec& N1, RateSpec nu1, const BoundSpec& N2, RateSpec nu2,
                            const Grid& grid, double tol) {
  if (fam.count() != 2) throw std::invalid_argument("check_dichotomy: need a two-projector family");
  CertBuilder b("dichotomy", grid, tol);
  b.as_printed_note(sys);
  b.cert.constants["N1"] = N1.description();
  b.cert.constants["N2"] = N2.description();
  b.cert.constants["nu1"] = std::to_string(nu1.rho);
  b.cert.constants["nu2"] = std::to_string(nu2.rho);
  precheck_family(b, fam, sys, grid, tol);
  const CocycleSpec c1 = split_cocycle(sys, fam, 1);
  const CocycleSpec c2 = split_cocycle(sys, fam, 2);
  const Signal& x = sys.base;
  for (const auto& tr : grid.triples) {
    const Snapshot s1t = snap(c1, tr.t, tr.t0, x), s1s = snap(c1, tr.s, tr.t0, x);
    const Snapshot s2t = snap(c2, tr.t, tr.t0, x), s2s = snap(c2, tr.s, tr.t0, x);
    const double gap = tr.t - tr.s;
    const double b1 = N1.log_value(tr.s);
    const double b2 = N2.log_value(tr.t);
    for (std::size_t p = 0; p < grid.probes.size(); ++p) {
      const Vec& v = grid.probes[p];
      b.record("stable",
               compare_logs(nu1.rho * gap + snap_log_norm(s1t, v), b1 + snap_log_norm(s1s, v)), tr,
               static_cast<int>(p));
      b.record("instable",
               compare_logs(nu2.rho * gap + snap_log_norm(s2s, v), b2 + snap_log_norm(s2t, v)), tr,
               static_cast<int>(p));
    }
  }
  return b.finish();
}

Certificate check_trichotomy(const CocycleSpec& sys, const ProjectorFamily& fam,
                             const TrichotomyConstants& c, const Grid& grid,
                             const TrichotomyOptions& opt, double tol) {
  if (fam.count() != 3)
    throw std::invalid_argument("check_trichotomy: need a three-projector family");
  if (!opt.plain) {
    const bool ordered = c.nu1 < c.nu2 && c.nu2 <= 0 && 0 <= c.nu3 && c.nu3 < c.nu4;
    if (!ordered && !opt.allow_unordered_rates)
      throw std::invalid_argument(
          "check_trichotomy: rates must satisfy nu1 < nu2 <= 0 <= nu3 < nu4");
  }
  CertBuilder b(opt.plain ? "trichotomy_plain" : "trichotomy", grid, tol);
  b.as_printed_note(sys);
  b.cert.constants["N1"] = c.N1.description();
  b.cert.constants["N2"] = c.N2.description();
  b.cert.constants["N3"] = c.N3.description();
  if (!opt.plain) {
    b.cert.constants["N4"] = c.N4.description();
    b.cert.constants["nu1"] = std::to_string(c.nu1);
    b.cert.constants["nu2"] = std::to_string(c.nu2);
    b.cert.constants["nu3"] = std::to_string(c.nu3);
    b.cert.constants["nu4"] = std::to_string(c.nu4);
    const bool ordered = c.nu1 < c.nu2 && c.nu2 <= 0 && 0 <= c.nu3 && c.nu3 < c.nu4;
    if (!ordered) b.cert.hypotheses.push_back("rate ordering violated (checked as supplied)");
  }
  precheck_family(b, fam, sys, grid, tol);
  const CocycleSpec c1 = split_cocycle(sys, fam, 1);
  const CocycleSpec c2 = split_cocycle(sys, fam, 2);
  const CocycleSpec c3 = split_cocycle(sys, fam, 3);
  const Signal& x = sys.base;
  for (const auto& tr : grid.triples) {
    const Snapshot s1t = snap(c1, tr.t, tr.t0, x), s1s = snap(c1, tr.s, tr.t0, x);
    const Snapshot s2t = snap(c2, tr.t, tr.t0, x), s2s = snap(c2, tr.s, tr.t0, x);
    const Snapshot s3t = snap(c3, tr.t, tr.t0, x), s3s = snap(c3, tr.s, tr.t0, x);
    const double gap = tr.t - tr.s;
    for (std::size_t p = 0; p < grid.probes.size(); ++p) {
      const Vec& v = grid.probes[p];
      if (opt.plain) {
        const double n1 = c.N1.log_value(tr.t0), n2 = c.N2.log_value(tr.t0),
                     n3 = c.N3.log_value(tr.t0);
        b.record("P1", compare_logs(snap_log_norm(s1t, v), n1 + snap_log_norm(s1s, v)), tr,
                 static_cast<int>(p));
        b.record("P2", compare_logs(snap_log_norm(s2s, v), n2 + snap_log_norm(s2t, v)), tr,
                 static_cast<int>(p));
        b.record("P3_lower", compare_logs(snap_log_norm(s3s, v), n3 + snap_log_norm(s3t, v)), tr,
                 static_cast<int>(p));
        b.record("P3_upper", compare_logs(snap_log_norm(s3t, v), n3 + snap_log_norm(s3s, v)), tr,
                 static_cast<int>(p));
      } else {
        b.record("P1_stable",
                 compare_logs(snap_log_norm(s1t, v),
                              c.N1.log_value(tr.s) + c.nu1 * gap + snap_log_norm(s1s, v)),
                 tr, static_cast<int>(p));
        b.record("P2_instable",
                 compare_logs(c.nu4 * gap + snap_log_norm(s2s, v),
                              c.N4.log_value(tr.t) + snap_log_norm(s2t, v)),
                 tr, static_cast<int>(p));
        b.record("P3_growth",
                 compare_logs(snap_log_norm(s3t, v),
                              c.N3.log_value(tr.s) + c.nu3 * gap + snap_log_norm(s3s, v)),
                 tr, static_cast<int>(p));
        b.record("P3_decay",
                 compare_logs(c.nu2 * gap + snap_log_norm(s3s, v),
                              c.N2.log_value(tr.t) + snap_log_norm(s3t, v)),
                 tr, static_cast<int>(p));
      }
    }
  }
  return b.finish();
}

namespace {

/// Linear-space norm of Phi(tau, t0, x) v for quadrature integrands.
double linear_norm(const CocycleSpec& sys, double t, double s, const Signal& x, const Vec& v) {
  const double l = log_norm_apply(sys, t, s, x, v);
  return is_zero_log(l) ? 0.0 : std::exp(l);
}

}  // namespace

Certificate integral_dichotomy(const CocycleSpec& sys, const ProjectorFamily& fam, double alpha,
                               double beta, const BoundSpec& M1, const BoundSpec& M2,
                               const Grid& grid, const QuadParams& quad, double tol) {
  if (!(alpha > 0) || !(beta > 0))
    throw std::invalid_argument("integral_dichotomy: alpha and beta must be positive");
  if (fam.count() != 2)
    throw std::invalid_argument("integral_dichotomy: need a two-projector family");
  CertBuilder b("integral_dichotomy", grid, tol);
  b.as_printed_note(sys);
  b.cert.quad_step = quad.step;
  b.cert.constants["alpha"] = std::to_string(alpha);
  b.cert.constants["beta"] = std::to_string(beta);
  b.cert.constants["M1"] = M1.description();
  b.cert.constants["M2"] = M2.description();
  precheck_family(b, fam, sys, grid, tol);
  const CocycleSpec c1 = split_cocycle(sys, fam, 1);
  const CocycleSpec c2 = split_cocycle(sys, fam, 2);
  const Signal& x = sys.base;
  for (const auto& tr : grid.triples) {
    const double t = tr.t, t0 = tr.t0;
    const Matrix p1 = fam.projector(1, x);
    const Snapshot c2_at_t = snap(c2, t, t0, x);
    for (std::size_t p = 0; p < grid.probes.size(); ++p) {
      const Vec& v = grid.probes[p];
      const QuadResult i1 = integrate(
          [&](double tau) { return std::exp(alpha * (tau - t0)) * linear_norm(c1, tau, t0, x, v); },
          t0, t, quad.step);
      const QuadResult i2 = integrate(
          [&](double tau) { return std::exp(beta * (t - tau)) * linear_norm(c2, tau, t0, x, v); },
          t0, t, quad.step);
      b.cert.quad_error_worst = std::max(b.cert.quad_error_worst, std::max(i1.error, i2.error));
      const double lhs1 = i1.value + i1.error;
      const double rhs1_log = M1.log_value(t0) +
                              (norm_l1(apply(p1, v)) == 0.0 ? kNegInf
                                                            : std::log(norm_l1(apply(p1, v))));
      b.record("ed1", compare_logs(lhs1 == 0.0 ? kNegInf : std::log(lhs1), rhs1_log),
               Triple{t, t, t0}, static_cast<int>(p));
      const double lhs2 = i2.value + i2.error;
      const double rhs2_log = M2.log_value(t) + snap_log_norm(c2_at_t, v);
      b.record("ed2", compare_logs(lhs2 == 0.0 ? kNegInf : std::log(lhs2), rhs2_log),
               Triple{t, t, t0}, static_cast<int>(p));
    }
  }
  return b.finish();
}

Certificate integral_trichotomy(const CocycleSpec& sys, const ProjectorFamily& fam, double alpha,
                                double beta, const BoundSpec& Ntil, const BoundSpec& Nbar,
                                const BoundSpec& Mtil, const BoundSpec& Mbar,
                                const EnvelopeRule& gtil, const EnvelopeRule& gbar,
                                const Grid& grid, const QuadParams& quad, double tol) {
  if (!(alpha > 0) || !(beta > 0))
    throw std::invalid_argument("integral_trichotomy: alpha and beta must be positive");
  if (fam.count() != 3)
    throw std::invalid_argument("integral_trichotomy: need a three-projector family");
  CertBuilder b("integral_trichotomy", grid, tol);
  b.as_printed_note(sys);
  b.cert.quad_step = quad.step;
  b.cert.constants["alpha"] = std::to_string(alpha);
  b.cert.constants["beta"] = std::to_string(beta);
  b.cert.constants["Ntil"] = Ntil.description();
  b.cert.constants["Nbar"] = Nbar.description();
  b.cert.constants["Mtil"] = Mtil.description();
  b.cert.constants["Mbar"] = Mbar.description();
  b.cert.constants["gtil"] = gtil.description;
  b.cert.constants["gbar"] = gbar.description;
  b.cert.hypotheses.push_back("et2 integrated from t0, matching the integrand anchor");
  precheck_family(b, fam, sys, grid, tol);
  const CocycleSpec c2 = split_cocycle(sys, fam, 2);
  const CocycleSpec c3 = split_cocycle(sys, fam, 3);
  const Signal& x = sys.base;

  for (const auto& tr : grid.triples) {
    const double t = tr.t, t0 = tr.t0;
    const Matrix p1 = fam.projector(1, x);

    // (1): integrate the adjoint action over the middle time. Multipliers are
    // sampled once per node and reused across dual probes.
    {
      const long n = nodes_multiple_of_4(t - t0, quad.step);
      const double h = (t - t0) / static_cast<double>(n);
      std::vector<Snapshot> snaps;
      snaps.reserve(static_cast<std::size_t>(n) + 1);
      for (long j = 0; j <= n; ++j) {
        const double s = t0 + h * static_cast<double>(j);
        snaps.push_back(snap(sys, t, s, translate(x, s - t0)));
      }
      for (std::size_t p = 0; p < grid.dual_probes.size(); ++p) {
        const Vec w1 = apply_transpose(p1, grid.dual_probes[p]);
        const double rhs_log =
            Ntil.log_value(t0) + (norm_linf(w1) == 0.0 ? kNegInf : std::log(norm_linf(w1)));
        std::vector<double> vals(snaps.size());
        bool finite = true;
        for (std::size_t j = 0; j < snaps.size(); ++j) {
          const double s = t0 + h * static_cast<double>(j);
          const double l = snap_log_norm_dual(snaps[j], w1);
          vals[j] = is_zero_log(l) ? 0.0 : std::exp(alpha * (t - s) + l);
          if (!std::isfinite(vals[j])) finite = false;
        }
        Margin m;
        if (!finite || t == t0) {
          m = compare_logs(t == t0 ? kNegInf : kPosInf, rhs_log);
        } else {
          const QuadResult q = sampled_simpson(vals, h);
          b.cert.quad_error_worst = std::max(b.cert.quad_error_worst, q.error);
          const double lhs = q.value + q.error;
          m = compare_logs(lhs == 0.0 ? kNegInf : std::log(lhs), rhs_log);
        }
        b.record("et1", m, Triple{t, t, t0}, static_cast<int>(p));
      }
    }

    // (2): weighted integral on the P2 range.
    const Snapshot c2_at_t = snap(c2, t, t0, x);
    for (std::size_t p = 0; p < grid.probes.size(); ++p) {
      const Vec& v = grid.probes[p];
      const QuadResult q = integrate(
          [&](double s) { return std::exp(-beta * (s - t0)) * linear_norm(c2, s, t0, x, v); }, t0,
          t, quad.step);
      b.cert.quad_error_worst = std::max(b.cert.quad_error_worst, q.error);
      const double lhs = q.value + q.error;
      const double rhs_log = Nbar.log_value(t) - beta * (t - t0) + snap_log_norm(c2_at_t, v);
      b.record("et2", compare_logs(lhs == 0.0 ? kNegInf : std::log(lhs), rhs_log),
               Triple{t, t, t0}, static_cast<int>(p));
    }

    // (3)/(4): pointwise envelope sandwiches on the P3 range.
    const Snapshot s3t = snap(c3, tr.t, tr.t0, x), s3s = snap(c3, tr.s, tr.t0, x);
    const double gap = tr.t - tr.s;
    const double gt = gtil.fn(gap), gb = gbar.fn(gap);
    if (!(gt > 0) || !(gb > 0))
      throw std::domain_error("integral_trichotomy: envelope rules must be positive");
    for (std::size_t p = 0; p < grid.probes.size(); ++p) {
      const Vec& v = grid.probes[p];
      b.record("et3",
               compare_logs(snap_log_norm(s3t, v),
                            Mtil.log_value(tr.s) + std::log(gt) + snap_log_norm(s3s, v)),
               tr, static_cast<int>(p));
      b.record("et4",
               compare_logs(snap_log_norm(s3s, v),
                            Mbar.log_value(tr.t) + std::log(gb) + snap_log_norm(s3t, v)),
               tr, static_cast<int>(p));
    }
  }
  return b.finish();
}

ExponentEstimate estimate_exponent(const CocycleSpec& sys, const ProjectorFamily* fam, int k,
                                   const Grid& grid, bool forward) {
  std::set<double> gaps;
  for (const auto& tr : grid.triples) gaps.insert(tr.t - tr.s);
  if (gaps.size() < 10)
    throw std::invalid_argument("estimate_exponent: need at least 10 distinct gap values");
  const CocycleSpec sub = (fam && k >= 1) ? split_cocycle(sys, *fam, k) : sys;
  const Signal& x = sys.base;

  ExponentEstimate out;
  out.nu_hat = kPosInf;
  out.r2 = 1.0;
  bool any_probe = false;
  for (const auto& v : grid.probes) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    for (const auto& tr : grid.triples) {
      const double lt = log_norm_apply(sub, tr.t, tr.t0, x, v);
      const double ls = log_norm_apply(sub, tr.s, tr.t0, x, v);
      if (is_zero_log(lt) || is_zero_log(ls)) continue;
      const double gx = tr.t - tr.s, gy = lt - ls;
      sx += gx;
      sy += gy;
      sxx += gx * gx;
      sxy += gx * gy;
      syy += gy * gy;
      ++n;
    }
    if (n < 10) continue;
    const double den = n * sxx - sx * sx;
    if (den == 0.0) continue;
    const double slope = (n * sxy - sx * sy) / den;
    const double intercept = (sy - slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    const double ss_res =
        syy - 2.0 * (slope * sxy + intercept * sy) + slope * slope * sxx +
        2.0 * slope * intercept * sx + intercept * intercept * n;
    const double r2 = ss_tot <= 0.0 ? 1.0 : std::max(0.0, 1.0 - ss_res / ss_tot);
    const double rate = forward ? -slope : slope;
    any_probe = true;
    out.nu_hat = std::min(out.nu_hat, rate);
    out.r2 = std::min(out.r2, r2);
    out.samples += n;
  }
  if (!any_probe)
    throw std::invalid_argument("estimate_exponent: no probe produced a usable sample");
  return out;
}

ProbeReport uniformity_probe(const CocycleSpec& sys, const Witness& w, int n_max,
                             double threshold) {
  if (n_max < 1) throw std::invalid_argument("uniformity_probe: n_max must be >= 1");
  ProbeReport rep;
  rep.witness_id = w.id;
  rep.mode = w.mode;
  rep.n_max = n_max;
  rep.threshold = threshold;
  const bool instable = w.mode == "instable";
  const Signal& x = sys.base;
  bool noted_closed = false;
  for (int n = 1; n <= n_max; ++n) {
    const auto [t, s] = w.pair_fn(n);
    if (!(t >= s) || !(s >= 0))
      throw std::invalid_argument("uniformity_probe: witness times must satisfy t_n >= s_n >= 0");
    ProbeRow row;
    row.n = n;
    row.t = t;
    row.s = s;
    if (t > s || !w.closed_log) {
      const double l = log_norm_apply(sys, t, s, x, w.probe);
      row.log_value = instable ? -l : l;
    } else {
      // Consecutive witness times collapse in double precision; continue the
      // sequence with the published closed form.
      row.log_value = w.closed_log(n);
      row.closed_form = true;
      if (!noted_closed) {
        rep.notes.push_back("closed-form continuation where witness times collapse in double");
        noted_closed = true;
      }
    }
    if (!std::isfinite(row.log_value)) {
      rep.truncated = true;
      rep.notes.push_back("sequence truncated at n=" + std::to_string(n) +
                          ": non-finite log value");
      break;
    }
    row.value = std::exp(row.log_value);  // may overflow to inf; log stays exact
    rep.rows.push_back(row);
  }
  const std::size_t count = rep.rows.size();
  if (count >= 2) {
    const std::size_t start = count / 2;
    bool increasing = true;
    for (std::size_t i = start; i + 1 < count; ++i)
      if (!(rep.rows[i + 1].log_value > rep.rows[i].log_value)) increasing = false;
    rep.falsified = increasing && rep.rows.back().log_value >= std::log(threshold);
  }
  return rep;
}

EnvelopeReport envelope_estimate(const CocycleSpec& sys, bool forward,
                                 const std::vector<double>& gaps, const Grid& grid) {
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (gaps[i] < 0) throw std::invalid_argument("envelope_estimate: gaps must be >= 0");
    if (i > 0 && !(gaps[i] > gaps[i - 1]))
      throw std::invalid_argument("envelope_estimate: gaps must be sorted ascending");
  }
  EnvelopeReport rep;
  rep.direction = forward ? "forward" : "backward";
  const Signal& x = sys.base;
  double running = kNegInf;
  for (double u : gaps) {
    double worst = kNegInf;
    for (const auto& tr : grid.triples) {
      const Snapshot hi = snap(sys, tr.s + u, tr.t0, x);
      const Snapshot lo = snap(sys, tr.s, tr.t0, x);
      for (const auto& v : grid.probes) {
        const double lh = snap_log_norm(hi, v), ll = snap_log_norm(lo, v);
        if (is_zero_log(lh) || is_zero_log(ll)) continue;
        worst = std::max(worst, forward ? lh - ll : ll - lh);
      }
    }
    running = std::max(running, worst);
    rep.points.push_back({u, worst, running});
  }
  return rep;
}

}  // namespace skewflow
