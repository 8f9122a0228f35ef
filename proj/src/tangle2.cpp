#include "qtangle/tangle2.hpp"

#include <algorithm>
#include <cmath>

#include "qtangle/qstate.hpp"

namespace qtangle {

namespace {

void require_two_qubits(const PureState& psi) {
  if (psi.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("operation requires dims = [2,2]");
}

}  // namespace

namespace detail {

Matrix sigma_yy() {
  Matrix y(2, 2);
  y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  Matrix yy(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      yy.block(2 * i, 2 * j, 2, 2) = y(i, j) * y;
  return yy;
}

Matrix hermitian_sqrt_psd(const Matrix& m, double tol) {
  HermitianSpectrum sp = hermitian_eig(m);
  if (sp.eigenvalues.minCoeff() < -tol)
    throw std::invalid_argument("matrix not PSD within tolerance");
  RealVector clamped = sp.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return sp.eigenvectors * clamped.asDiagonal() *
         sp.eigenvectors.adjoint();
}

WoottersLambdas lambdas_from_flattening(const Matrix& x) {
  static const Matrix yy = sigma_yy();
  Matrix q = x.transpose() * yy * x;  // env x env, symmetric
  Eigen::JacobiSVD<Matrix> svd(q);
  WoottersLambdas out{{0.0, 0.0, 0.0, 0.0}};
  for (Eigen::Index k = 0; k < svd.singularValues().size() && k < 4; ++k)
    out.values[static_cast<std::size_t>(k)] = svd.singularValues()[k];
  std::sort(out.values.begin(), out.values.end(), std::greater<double>());
  return out;
}

}  // namespace detail

double two_tangle_pure(const PureState& psi, const SiteSet& cut) {
  if (static_cast<int>(cut.size()) == psi.sites())
    throw std::invalid_argument("cut must be a proper subset of sites");
  DensityMatrix rho = partial_trace(psi, cut);
  const double purity = trace_power(rho.mat, 2).real();
  return 2.0 * (1.0 - purity);
}

double concurrence_pure(const PureState& psi) {
  require_two_qubits(psi);
  static const Matrix yy = detail::sigma_yy();
  // <Psi| YY |Psi*> contracts the amplitudes without conjugation.
  Complex overlap = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      overlap += std::conj(psi.amps[i]) * yy(i, j) * std::conj(psi.amps[j]);
  return std::abs(overlap);
}

double two_tangle_det(const PureState& psi) {
  require_two_qubits(psi);
  DensityMatrix rho_a = partial_trace(psi, {0});
  return 4.0 * rho_a.mat.determinant().real();
}

double two_tangle_hyperdet(const PureState& psi) {
  require_two_qubits(psi);
  const Vector& t = psi.amps;
  return 4.0 * std::norm(t[0] * t[3] - t[1] * t[2]);
}

WoottersLambdas wootters_lambdas(const DensityMatrix& rho) {
  if (rho.dim() != 4 || rho.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("Wootters formula requires a 4x4 two-qubit "
                                "density matrix");
  validate_density(rho);
  static const Matrix yy = detail::sigma_yy();
  Matrix sqrt_rho = detail::hermitian_sqrt_psd(rho.mat);
  // rho_tilde = YY rho* YY, so sqrt(rho_tilde) = YY sqrt(rho)* YY.
  Matrix sqrt_tilde = yy * sqrt_rho.conjugate() * yy;
  Eigen::JacobiSVD<Matrix> svd(sqrt_rho * sqrt_tilde);
  WoottersLambdas out{};
  for (int k = 0; k < 4; ++k)
    out.values[static_cast<std::size_t>(k)] = svd.singularValues()[k];
  return out;
}

double wootters_mixed(const DensityMatrix& rho) {
  WoottersLambdas l = wootters_lambdas(rho);
  const double c =
      std::max(0.0, l.values[0] - l.values[1] - l.values[2] - l.values[3]);
  return c * c;
}

}  // namespace qtangle
