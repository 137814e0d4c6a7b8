#include "projectors.hpp"

#include <cmath>
#include <stdexcept>

namespace skewflow {

ComplianceReport check_family(const ProjectorFamily& fam, const CocycleSpec& sys, const Grid& grid,
                              double tolerance) {
  if (fam.dim() != sys.dim) throw std::invalid_argument("check_family: dimension mismatch");
  if (grid.triples.empty()) throw std::invalid_argument("check_family: empty grid");
  ComplianceReport rep;
  rep.tolerance = tolerance;
  const Signal& x = sys.base;

  // Idempotence and complementarity are properties of the family alone;
  // sample them at the signal points the commutation sweep visits.
  auto family_residuals = [&](const Signal& at) {
    Matrix sum(fam.dim());
    for (int k = 1; k <= fam.count(); ++k) {
      const Matrix p = fam.projector(k, at);
      const Matrix pp = p * p;
      Matrix diff = pp;
      for (std::size_t i = 0; i < diff.a.size(); ++i) diff.a[i] -= p.a[i];
      rep.idempotence = std::max(rep.idempotence, max_abs_entry(diff));
      for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += p.a[i];
      for (int j = 1; j <= fam.count(); ++j) {
        if (j == k) continue;
        const Matrix q = fam.projector(j, at);
        rep.complementarity = std::max(rep.complementarity, max_abs_entry(p * q));
      }
    }
    const Matrix eye = Matrix::identity(fam.dim());
    for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] -= eye.a[i];
    rep.complementarity = std::max(rep.complementarity, max_abs_entry(sum));
  };

  family_residuals(x);

  for (const auto& tr : grid.triples) {
    const Signal moved = eval_semiflow(sys, tr.t, tr.s, x);
    family_residuals(moved);
    const Matrix phi = sys.is_diagonal() ? [&] {
      const auto d = sys.diag(tr.t, tr.s, x);
      Matrix m(sys.dim);
      for (int i = 0; i < sys.dim; ++i) m(i, i) = d[static_cast<std::size_t>(i)].value();
      return m;
    }()
                                         : sys.matrix(tr.t, tr.s, x);
    for (int k = 1; k <= fam.count(); ++k) {
      const Matrix lhs = fam.projector(k, moved) * phi;
      const Matrix rhs = phi * fam.projector(k, x);
      for (const auto& v : grid.probes) {
        const Vec a = apply(lhs, v);
        const Vec b = apply(rhs, v);
        double num = 0;
        for (std::size_t i = 0; i < v.size(); ++i) num += std::abs(a[i] - b[i]);
        // Normalized by the cocycle magnitude so huge multipliers do not
        // produce false failures.
        const double res = num / std::max(1.0, norm_l1(apply(phi, v)));
        if (res > rep.commutation) {
          rep.commutation = res;
          rep.worst_commutation_point = tr;
          rep.worst_commutation_k = k;
        }
      }
    }
  }

  rep.pass = rep.worst() <= tolerance;
  return rep;
}

}  // namespace skewflow
