#include "grid.hpp"

#include <stdexcept>

#include "rng.hpp"

namespace skewflow {

Grid make_grid(const GridParams& p, int dim) {
  if (p.triples < 1) throw std::invalid_argument("grid: triple_count must be >= 1");
  if (!(p.horizon > 0)) throw std::invalid_argument("grid: horizon must be positive");
  if (dim < 1) throw std::invalid_argument("grid: dimension must be >= 1");
  Grid g;
  g.params = p;
  g.dim = dim;

  Rng rng(p.seed);
  g.triples.reserve(static_cast<std::size_t>(p.triples));
  for (int i = 0; i < p.triples; ++i) {
    Triple tr;
    tr.t0 = rng.uniform(0.0, p.horizon);
    tr.s = tr.t0 + rng.uniform(0.0, p.horizon - tr.t0);
    tr.t = tr.s + rng.uniform(0.0, p.horizon - tr.s);
    g.triples.push_back(tr);
  }

  for (int i = 0; i < dim; ++i) {
    for (double sign : {1.0, -1.0}) {
      Vec e(static_cast<std::size_t>(dim), 0.0);
      e[static_cast<std::size_t>(i)] = sign;
      g.probes.push_back(e);
      g.dual_probes.push_back(e);
    }
  }
  for (int r = 0; r < p.random_probes; ++r) {
    Vec v(static_cast<std::size_t>(dim));
    double n1 = 0;
    do {
      n1 = 0;
      for (auto& c : v) {
        c = rng.symmetric();
        n1 += std::abs(c);
      }
    } while (n1 == 0.0);
    Vec w = v;
    for (auto& c : v) c /= n1;
    g.probes.push_back(v);
    const double ni = norm_linf(w);
    for (auto& c : w) c /= ni;
    g.dual_probes.push_back(w);
  }
  return g;
}

}  // namespace skewflow
