#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qtangle {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Sorted list of 0-based site indices identifying a subsystem.
using SiteSet = std::vector<int>;

inline constexpr double kTolNorm = 1e-12;
inline constexpr double kTolHermitian = 1e-10;
inline constexpr double kTolPsd = 1e-10;
inline constexpr int kMaxTotalDim = 4096;

/// Multi-qudit pure state. Amplitudes are flattened with the LAST site
/// index varying fastest, so for qubits amps[r] with r = 8j + 4k + 2l + m.
struct PureState {
  std::vector<int> dims;
  Vector amps;
  bool normalized = true;  // false: raw coefficients, norm may differ from 1
  double scale = 1.0;      // rescale applied at construction when normalizing

  int sites() const { return static_cast<int>(dims.size()); }
  int dim() const { return static_cast<int>(amps.size()); }
};

struct DensityMatrix {
  std::vector<int> dims;
  Matrix mat;

  int dim() const { return static_cast<int>(mat.rows()); }
};

struct HermitianSpectrum {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // unitary, columns aligned with eigenvalues
  double hermiticity_correction = 0.0;  // ||M - (M+M^dag)/2||_max on input
};

struct SchmidtDecomposition {
  RealVector coefficients;  // nonnegative, descending, sum of squares = 1
  Matrix left;              // d_cut x r
  Matrix right;             // d_rest x r
};

inline int product_dim(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) p *= d;
  return static_cast<int>(p);
}

/// Row-major strides: stride[r] = prod dims[r+1..], last site fastest.
inline std::vector<int> index_strides(const std::vector<int>& dims) {
  std::vector<int> s(dims.size());
  int acc = 1;
  for (int r = static_cast<int>(dims.size()) - 1; r >= 0; --r) {
    s[r] = acc;
    acc *= dims[r];
  }
  return s;
}

inline std::vector<int> decode_index(int g, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (int r = static_cast<int>(dims.size()) - 1; r >= 0; --r) {
    digits[r] = g % dims[r];
    g /= dims[r];
  }
  return digits;
}

void check_valid_dims(const std::vector<int>& dims);
void check_site_set(const SiteSet& sites, int q, bool allow_empty = false);

}  // namespace qtangle
