#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "qtangle/core.hpp"
#include "qtangle/separability.hpp"

namespace qtangle {

/// The four-qubit invariant family evaluated on the raw coefficient tensor.
struct QuadInvariants {
  Complex H;
  Complex L, M, N;
  Complex Sigma, Pi;
  Complex D_xy, D_xz, D_xw;
  Complex W;
  Complex Delta;
};

QuadInvariants quad_invariants(const PureState& psi);

/// Degree-2 invariant from the binary-index pairing of the amplitudes.
Complex h_coeff(const PureState& psi);

/// H = (1/2) <Psi*| sigma_y^x4 |Psi>, evaluated through the operator.
Complex h_spinflip(const PureState& psi);

std::tuple<Complex, Complex, Complex> lmn(const PureState& psi);

/// (D_xy, D_xz, D_xw, W) from the quadrilinear form's 3x3 determinants.
std::tuple<Complex, Complex, Complex, Complex> w_invariant(
    const PureState& psi);

/// D for an arbitrary site pair (sites 0..3 carry x,y,z,w).
Complex d_pair(const PureState& psi, int u_site, int v_site);

/// Degree-24 hyperdeterminant through the closed polynomial in H, Sigma,
/// Pi, W.
Complex hyperdet4(const PureState& psi);

/// Convex roof of the four-tangle from the sigma_y^x4 spin-flipped spectrum.
double four_tangle_mixed(const DensityMatrix& rho);

/// |4|H|^2 - (sum one-site tangles - sum two-site tangles)| with
/// linear-entropy tangles 2(1 - Tr rho^2) of the pure state.
double gour_identity_check(const PureState& psi);

struct MeasureEntry {
  std::string name;
  double value;
  bool optimizer;  // true: roof-optimizer estimate, false: closed form
};

struct MeasureReport {
  std::vector<MeasureEntry> entries;
  std::uint64_t seed;
  int restarts;

  const MeasureEntry& at(const std::string& name) const;
};

/// The full eighteen-measure report for a four-qubit state; the state is
/// normalized first. Roof entries follow opts.
MeasureReport measure_set_18(const PureState& psi, RoofOptions opts = {});

std::string report_to_json(const MeasureReport& report);

}  // namespace qtangle
