#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "defaults.hpp"
#include "grid.hpp"
#include "projectors.hpp"
#include "quadrature.hpp"
#include "semiflow.hpp"

namespace skewflow {

struct WorstPoint {
  double t = 0, s = 0, t0 = 0;
  int probe = -1;
  std::string branch;
};

/// Outcome of one certification run. A pass certifies the inequalities on
/// the sampled grid only; seed and horizon are recorded so the run is
/// reproducible.
struct Certificate {
  std::string kind;
  bool pass = false;
  double tolerance = defaults::tolerance;
  // max over the grid of (lhs - rhs) / max(1, rhs); positive means fail
  double worst_violation = 0;
  // max over the grid of log(lhs / rhs); scale-free margin used to pick the
  // reported worst point
  double worst_log_ratio = 0;
  WorstPoint worst_point;
  std::map<std::string, double> branch_violations;
  std::map<std::string, std::string> constants;
  GridParams grid;
  int probe_count = 0;
  double quad_step = 0;  // 0 when no quadrature was involved
  double quad_error_worst = 0;
  std::vector<std::string> hypotheses;
  std::vector<std::string> notes;
  bool precondition_failed = false;
  bool overflow = false;
};

/// Forward bound || Phi(t,t0,x) v || <= N(s) e^{rho (t-s)} || Phi(s,t0,x) v ||.
/// rho < 0 certifies exponential stability, rho = 0 plain stability, rho > 0
/// exponential growth.
Certificate check_forward_bound(const CocycleSpec& sys, const BoundSpec& N, RateSpec rate,
                                const Grid& grid, double tol = defaults::tolerance);

/// Backward bound || Phi(s,t0,x) v || <= N(t) e^{rho (t-s)} || Phi(t,t0,x) v ||.
/// rho < 0 certifies exponential instability, rho = 0 plain instability,
/// rho > 0 exponential decay.
Certificate check_backward_bound(const CocycleSpec& sys, const BoundSpec& N, RateSpec rate,
                                 const Grid& grid, double tol = defaults::tolerance);

/// Two-projector dichotomy: e^{nu1 (t-s)} ||Phi_1(t,t0,x)v|| <= N1(s) ||Phi_1(s,t0,x)v||
/// and e^{nu2 (t-s)} ||Phi_2(s,t0,x)v|| <= N2(t) ||Phi_2(t,t0,x)v||.
/// The plain variant is the nu1 = nu2 = 0 instance.
Certificate check_dichotomy(const CocycleSpec& sys, const ProjectorFamily& fam,
                            const BoundSpec& N1, RateSpec nu1, const BoundSpec& N2, RateSpec nu2,
                            const Grid& grid, double tol = defaults::tolerance);

struct TrichotomyConstants {
  BoundSpec N1, N2, N3, N4;
  double nu1 = 0, nu2 = 0, nu3 = 0, nu4 = 0;
};

struct TrichotomyOptions {
  bool plain = false;  // the zero-rate variant with N_i evaluated at t0
  bool allow_unordered_rates = false;
};

/// Three-projector trichotomy. Exponential variant requires the rate
/// ordering nu1 < nu2 <= 0 <= nu3 < nu4 unless explicitly relaxed.
Certificate check_trichotomy(const CocycleSpec& sys, const ProjectorFamily& fam,
                             const TrichotomyConstants& c, const Grid& grid,
                             const TrichotomyOptions& opt = {},
                             double tol = defaults::tolerance);

/// Integral characterization of dichotomy:
///   (ed1) int_{t0}^{t} e^{alpha (tau-t0)} ||Phi_1(tau,t0,x)v|| dtau <= M1(t0) ||P1(x)v||
///   (ed2) int_{t0}^{t} e^{beta (t-tau)} ||Phi_2(tau,t0,x)v|| dtau <= M2(t) ||Phi_2(t,t0,x)v||
/// The Richardson error estimate is folded into the margin.
Certificate integral_dichotomy(const CocycleSpec& sys, const ProjectorFamily& fam, double alpha,
                               double beta, const BoundSpec& M1, const BoundSpec& M2,
                               const Grid& grid, const QuadParams& quad = {},
                               double tol = defaults::tolerance);

/// Nondecreasing gap envelope used by the trichotomy characterization.
struct EnvelopeRule {
  std::function<double(double)> fn;
  std::string description;
};

/// Integral characterization of trichotomy, conditions (1)-(4):
///   (1) dual-norm integral against the adjoint on the P1 range,
///   (2) weighted integral on the P2 range (integrated from t0),
///   (3)/(4) pointwise envelope sandwiches on the P3 range.
Certificate integral_trichotomy(const CocycleSpec& sys, const ProjectorFamily& fam, double alpha,
                                double beta, const BoundSpec& Ntil, const BoundSpec& Nbar,
                                const BoundSpec& Mtil, const BoundSpec& Mbar,
                                const EnvelopeRule& gtil, const EnvelopeRule& gbar,
                                const Grid& grid, const QuadParams& quad = {},
                                double tol = defaults::tolerance);

struct ExponentEstimate {
  double nu_hat = 0;
  double r2 = 0;
  int samples = 0;
};

/// Least-squares slope of log-norm ratios against the gap t-s, aggregated
/// over probes by worst case. Forward returns the decay rate (negated
/// slope), backward the growth rate.
ExponentEstimate estimate_exponent(const CocycleSpec& sys, const ProjectorFamily* fam, int k,
                                   const Grid& grid, bool forward);

/// Witness sequence n -> (t_n, s_n) with a fixed unit probe. In stable mode
/// the reported value is || Phi(t_n, s_n, x) e ||, in instable mode its
/// reciprocal. closed_log may extend the sequence where consecutive witness
/// times are no longer distinct in double precision.
struct Witness {
  std::string id;
  std::string mode = "stable";  // "stable" | "instable"
  Vec probe;
  std::function<std::pair<double, double>(int)> pair_fn;
  std::function<double(int)> closed_log;  // optional
  std::string description;
};

struct ProbeRow {
  int n = 0;
  double t = 0, s = 0;
  double log_value = 0;
  double value = 0;
  bool closed_form = false;
};

struct ProbeReport {
  std::string witness_id;
  std::string mode;
  int n_max = 0;
  double threshold = defaults::divergence_threshold;
  std::vector<ProbeRow> rows;
  bool falsified = false;
  bool truncated = false;
  std::vector<std::string> notes;
};

ProbeReport uniformity_probe(const CocycleSpec& sys, const Witness& w, int n_max,
                             double threshold = defaults::divergence_threshold);

struct EnvelopePoint {
  double gap = 0;
  double raw_log = 0;       // worst sampled log norm-ratio at this gap
  double envelope_log = 0;  // running maximum, nondecreasing
};

struct EnvelopeReport {
  std::string direction;
  std::vector<EnvelopePoint> points;
};

/// Worst norm ratio at each gap, post-processed to a nondecreasing envelope
/// by running maximum.
EnvelopeReport envelope_estimate(const CocycleSpec& sys, bool forward,
                                 const std::vector<double>& gaps, const Grid& grid);

}  // namespace skewflow
