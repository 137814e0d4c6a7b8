#pragma once

#include <cstdint>

namespace skewflow {

// Library-wide defaults. Every certificate records the values actually used,
// so runs are reproducible from the report alone.
struct defaults {
  static constexpr double tolerance = 1e-9;         // relative, pointwise checks
  static constexpr double quad_step = 0.01;         // certification integrals
  static constexpr double signal_step = 1e-3;       // signal integrals inside cocycles
  static constexpr std::uint64_t seed = 42;
  static constexpr double horizon = 20.0;
  static constexpr int triples = 200;
  static constexpr int random_probes = 8;
  static constexpr double divergence_threshold = 1e3;
  static constexpr int metric_terms = 30;
  static constexpr int metric_samples_per_unit = 64;
};

inline constexpr const char* tool_version = "0.1.0";

}  // namespace skewflow
