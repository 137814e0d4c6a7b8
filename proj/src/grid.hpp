#pragma once

#include <cstdint>
#include <vector>

#include "defaults.hpp"
#include "linalg.hpp"

namespace skewflow {

struct GridParams {
  double horizon = defaults::horizon;
  int triples = defaults::triples;
  int random_probes = defaults::random_probes;
  std::uint64_t seed = defaults::seed;
};

struct Triple {
  double t = 0, s = 0, t0 = 0;  // t >= s >= t0 >= 0
};

/// Seeded sample of time triples plus probe vectors. Probes are all signed
/// standard basis vectors followed by seeded random unit vectors (l1-unit in
/// V, linf-unit in V*).
struct Grid {
  GridParams params;
  int dim = 1;
  std::vector<Triple> triples;
  std::vector<Vec> probes;
  std::vector<Vec> dual_probes;
};

Grid make_grid(const GridParams& p, int dim);

}  // namespace skewflow
