#pragma once

#include <string>

#include "defaults.hpp"
#include "grid.hpp"
#include "projector_family.hpp"
#include "semiflow.hpp"

namespace skewflow {

/// Worst residuals of the projector-family contract against one system:
/// idempotence P^2 = P, complementarity (sum P_k = I, P_i P_j = 0), and
/// commutation with the cocycle action.
struct ComplianceReport {
  double idempotence = 0;
  double complementarity = 0;
  double commutation = 0;
  Triple worst_commutation_point;
  int worst_commutation_k = -1;
  double tolerance = defaults::tolerance;
  bool pass = false;

  double worst() const {
    return std::max(idempotence, std::max(complementarity, commutation));
  }
};

ComplianceReport check_family(const ProjectorFamily& fam, const CocycleSpec& sys, const Grid& grid,
                              double tolerance = defaults::tolerance);

}  // namespace skewflow
