#pragma once

#include <cstdint>

#include "qtangle/core.hpp"

namespace qtangle {

/// Acin canonical form
/// l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>.
struct AcinParams {
  double l0, l1, l2, l3, l4;
  double phase;  // in [0, pi)
};

/// Squared canonical amplitudes (a,b,c,d,e) on the probability simplex,
/// with the reduced variables s = c+d and y = sqrt(cd).
struct SimplexPoint {
  double a, b, c, d, e;
  double s() const { return c + d; }
  double y() const { return std::sqrt(c * d); }
};

enum class BoundKind { kI5Lower, kPhiUpper };

struct BoundObjective {
  BoundKind which;
  double value;
  SimplexPoint argument;
  long long samples;
  std::uint64_t seed;
};

/// Third-order negativity Tr[(rho_BC^Gamma)^3] of a tripartite pure state;
/// evaluated for all three one-site traces and checked to agree.
double i5_pt(const PureState& psi);

/// Single-trace variant; i5_pt cross-checks all three.
double i5_pt_traced(const PureState& psi, int traced_site);

/// Same value through the replica route (id, (123), (132)).
double i5_replica(const PureState& psi);

/// 4|d1 - 2 d2 + 4 d3| from the coefficient tensor of a three-qubit state.
double three_tangle(const PureState& psi);

/// CKW residual route: tau_{A|BC} - tau_{A|B} - tau_{A|C} with the pairwise
/// terms as Wootters convex roofs of the two-qubit reductions.
double three_tangle_ckw(const PureState& psi);

/// 69 - Tr[(2 rho_AB + rho_A x I + I x rho_B)^3] - 3 Tr(rho_AB^2).
double phi_direct(const PureState& psi);

/// 12(1 - I5) + 27(tau_AB + tau_AC + tau_BC) + (81/2) tau_ABC.
double phi_decomposed(const PureState& psi);

PureState acin_state(const AcinParams& p);

/// I5 of the canonical form directly from (a..e, phi).
double i5_closed_form(const SimplexPoint& pt, double phase);

/// phi_ABC of the canonical form directly from (a..e, phi).
double phi_closed_form(const SimplexPoint& pt, double phase);

/// Appendix reduced objectives at the extremal phase cos(phi) = -1.
double i5_reduced_objective(double a, double b, double s, double y);
double phi_reduced_objective(double a, double b, double s);  // the 11/4 bound

struct BoundPair {
  BoundObjective i5_min;
  BoundObjective phi_max;
  bool i5_bound_respected;   // no sample below 2/9 - 1e-9
  bool phi_bound_respected;  // no sample above 99/2 + 1e-9
};

/// Samples the simplex uniformly, injects the saturating points, and tracks
/// the extrema of both reduced objectives.
BoundPair verify_bounds(long long samples, std::uint64_t seed);

std::string bounds_to_json(const BoundPair& bp);

}  // namespace qtangle
