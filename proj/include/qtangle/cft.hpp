#pragma once

#include "qtangle/core.hpp"

namespace qtangle {

struct CFTConfig {
  double c;             // central charge > 0
  double z1, z2, z3;    // distinct real points
  double eps;           // UV cutoff > 0
};

/// Conformal dimension of the 3-cycle twist operator: (c/12)(3 - 1/3).
double twist_dimension(double c);

/// ln C_123 of the holographic heavy-operator three-point coefficient.
/// The dimensions must satisfy strict triangle inequalities.
double ope_coeff_log(double d1, double d2, double d3);

/// ln Tr (rho_BC^Gamma)^3 for two adjacent intervals at large central
/// charge; everything stays in log space.
double ln_tr_neg3(const CFTConfig& cfg);

}  // namespace qtangle
