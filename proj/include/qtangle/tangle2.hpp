#pragma once

#include <array>

#include "qtangle/core.hpp"

namespace qtangle {

/// Square roots of the eigenvalues of rho * rho_tilde, descending.
struct WoottersLambdas {
  std::array<double, 4> values;
};

/// 2(1 - Tr rho_cut^2), valid for any bipartition of a pure qudit state.
double two_tangle_pure(const PureState& psi, const SiteSet& cut);

/// |<Psi| sigma_y x sigma_y |Psi*>| for two qubits.
double concurrence_pure(const PureState& psi);

/// 4 det rho_A for two qubits.
double two_tangle_det(const PureState& psi);

/// 4 |t00 t11 - t01 t10|^2 for two qubits.
double two_tangle_hyperdet(const PureState& psi);

WoottersLambdas wootters_lambdas(const DensityMatrix& rho);

/// Closed-form convex roof of the two-tangle:
/// (max{0, l1 - l2 - l3 - l4})^2 from the spin-flipped spectrum.
double wootters_mixed(const DensityMatrix& rho);

namespace detail {
/// Wootters lambdas of the two-qubit reduction of a pure state given its
/// pair-versus-environment flattening X (4 x env): singular values of
/// X^T (sigma_y x sigma_y) X, padded with zeros.
WoottersLambdas lambdas_from_flattening(const Matrix& x);
Matrix sigma_yy();
Matrix hermitian_sqrt_psd(const Matrix& m, double tol = kTolPsd);
}  // namespace detail

}  // namespace qtangle
