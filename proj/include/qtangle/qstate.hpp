#pragma once

#include <cstdint>

#include "qtangle/core.hpp"

namespace qtangle {

/// Builds a state from raw amplitudes. Unless allow_unnormalized is set the
/// amplitudes are rescaled to unit norm and the applied factor is recorded.
PureState make_pure(std::vector<int> dims, Vector amps,
                    bool allow_unnormalized = false);

DensityMatrix density(const PureState& psi);

/// Validates Hermiticity, unit trace and spectrum >= -tol. Throws on failure.
void validate_density(const DensityMatrix& rho, double tol = kTolPsd);

DensityMatrix partial_trace(const PureState& psi, const SiteSet& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSet& keep);

/// Transposes the listed sites; result is Hermitian but in general not PSD.
Matrix partial_transpose(const DensityMatrix& rho, const SiteSet& sites);

/// Tr(M^n) by repeated multiplication, n >= 1.
Complex trace_power(const Matrix& m, int n);

/// Cyclic Jacobi for Hermitian matrices. Input must be Hermitian within
/// 1e-10; it is symmetrized before sweeping and the correction recorded.
HermitianSpectrum hermitian_eig(const Matrix& m);

SchmidtDecomposition schmidt(const PureState& psi, const SiteSet& cut);

/// Unit vector of iid standard complex Gaussians, deterministic per seed.
PureState haar_random_pure(std::vector<int> dims, std::uint64_t seed);

/// Haar-distributed unitary (QR of a complex Gaussian with phase fix).
Matrix haar_random_unitary(int d, std::uint64_t seed);

/// (U_1 x ... x U_q) |psi>, one unitary per site.
PureState apply_local_unitaries(const PureState& psi,
                                const std::vector<Matrix>& u);

}  // namespace qtangle
