#include "qtangle/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qtangle {

void check_valid_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  long long total = 1;
  for (int d : dims) {
    if (d < 2) throw std::invalid_argument("every site dimension must be >= 2");
    total *= d;
    if (total > kMaxTotalDim)
      throw std::invalid_argument("total dimension exceeds cap 4096");
  }
}

void check_site_set(const SiteSet& sites, int q, bool allow_empty) {
  if (sites.empty() && !allow_empty)
    throw std::invalid_argument("site set must be nonempty");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 0 || sites[i] >= q)
      throw std::invalid_argument("site index out of range");
    if (i > 0 && sites[i] <= sites[i - 1])
      throw std::invalid_argument("site set must be strictly increasing");
  }
}

PureState make_pure(std::vector<int> dims, Vector amps,
                    bool allow_unnormalized) {
  check_valid_dims(dims);
  if (amps.size() != product_dim(dims))
    throw std::invalid_argument("amplitude count does not match dims");
  const double norm = amps.norm();
  if (norm == 0.0) throw std::invalid_argument("zero state vector");
  PureState psi;
  psi.dims = std::move(dims);
  if (allow_unnormalized) {
    psi.amps = std::move(amps);
    psi.normalized = std::abs(norm - 1.0) <= kTolNorm;
    psi.scale = 1.0;
  } else {
    psi.scale = 1.0 / norm;
    psi.amps = amps * psi.scale;
    psi.normalized = true;
  }
  return psi;
}

DensityMatrix density(const PureState& psi) {
  DensityMatrix rho;
  rho.dims = psi.dims;
  rho.mat = psi.amps * psi.amps.adjoint();
  return rho;
}

void validate_density(const DensityMatrix& rho, double tol) {
  const Matrix& m = rho.mat;
  if (m.rows() != m.cols() || m.rows() != product_dim(rho.dims))
    throw std::invalid_argument("density matrix shape does not match dims");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kTolHermitian)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > 1e-10 ||
      std::abs(m.trace().imag()) > 1e-10)
    throw std::invalid_argument("density matrix trace differs from 1");
  HermitianSpectrum sp = hermitian_eig(m);
  if (sp.eigenvalues.minCoeff() < -tol)
    throw std::invalid_argument("density matrix has negative eigenvalue");
}

namespace {

// Offsets of every keep- and complement-basis label inside the full index.
struct SplitOffsets {
  std::vector<int> keep_off;
  std::vector<int> comp_off;
};

SplitOffsets split_offsets(const std::vector<int>& dims, const SiteSet& keep) {
  const int q = static_cast<int>(dims.size());
  std::vector<int> strides = index_strides(dims);
  std::vector<int> comp;
  for (int r = 0; r < q; ++r)
    if (!std::binary_search(keep.begin(), keep.end(), r)) comp.push_back(r);

  auto offsets = [&](const std::vector<int>& sites) {
    std::vector<int> sub_dims;
    for (int s : sites) sub_dims.push_back(dims[s]);
    const int n = sub_dims.empty() ? 1 : product_dim(sub_dims);
    std::vector<int> out(n, 0);
    for (int g = 0; g < n; ++g) {
      int rem = g;
      for (int k = static_cast<int>(sites.size()) - 1; k >= 0; --k) {
        out[g] += (rem % sub_dims[k]) * strides[sites[k]];
        rem /= sub_dims[k];
      }
    }
    return out;
  };
  return {offsets(keep), offsets(comp)};
}

}  // namespace

DensityMatrix partial_trace(const PureState& psi, const SiteSet& keep) {
  check_site_set(keep, psi.sites());
  SplitOffsets off = split_offsets(psi.dims, keep);
  const int nk = static_cast<int>(off.keep_off.size());
  DensityMatrix out;
  for (int s : keep) out.dims.push_back(psi.dims[s]);
  out.mat = Matrix::Zero(nk, nk);
  for (int c : off.comp_off)
    for (int i = 0; i < nk; ++i) {
      const Complex ai = psi.amps[off.keep_off[i] + c];
      if (ai == Complex(0, 0)) continue;
      for (int j = 0; j < nk; ++j)
        out.mat(i, j) += ai * std::conj(psi.amps[off.keep_off[j] + c]);
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteSet& keep) {
  check_site_set(keep, static_cast<int>(rho.dims.size()));
  SplitOffsets off = split_offsets(rho.dims, keep);
  const int nk = static_cast<int>(off.keep_off.size());
  DensityMatrix out;
  for (int s : keep) out.dims.push_back(rho.dims[s]);
  out.mat = Matrix::Zero(nk, nk);
  for (int c : off.comp_off)
    for (int i = 0; i < nk; ++i)
      for (int j = 0; j < nk; ++j)
        out.mat(i, j) += rho.mat(off.keep_off[i] + c, off.keep_off[j] + c);
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho, const SiteSet& sites) {
  check_site_set(sites, static_cast<int>(rho.dims.size()), true);
  const int n = rho.dim();
  // Split every global index into its transposed-part offset and the rest.
  SplitOffsets off = split_offsets(rho.dims, sites);
  std::vector<int> strides = index_strides(rho.dims);
  std::vector<int> s_part(n);
  for (int g = 0; g < n; ++g) {
    std::vector<int> digits = decode_index(g, rho.dims);
    int sp = 0;
    for (int s : sites) sp += digits[s] * strides[s];
    s_part[g] = sp;
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i - s_part[i] + s_part[j], j - s_part[j] + s_part[i]) = rho.mat(i, j);
  return out;
}

Complex trace_power(const Matrix& m, int n) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  if (n < 1) throw std::invalid_argument("trace_power requires n >= 1");
  Matrix acc = m;
  for (int k = 1; k < n; ++k) acc = acc * m;
  return acc.trace();
}

HermitianSpectrum hermitian_eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  const int n = static_cast<int>(m.rows());
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kTolHermitian)
    throw std::invalid_argument("matrix is not Hermitian within 1e-10");

  Matrix a = 0.5 * (m + m.adjoint());
  Matrix v = Matrix::Identity(n, n);
  const double fro = a.norm();
  const double thresh = 1e-14 * fro;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > thresh; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (app - aqq) / (2.0 * mag);
        double t;  // tan(theta), inner root for stability
        if (std::isinf(tau)) {
          t = 0.0;
        } else {
          t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J mixes columns p,q: col_p <- c*col_p + s*conj(phase)... applied
        // as A <- J^dag A J, V <- V J with J(p,p)=c, J(p,q)=-s*conj(phase),
        // J(q,p)=s*phase ... chosen to zero a(p,q).
        const Complex jp = s * phase;
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + std::conj(jp) * akq;
          a(k, q) = -jp * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + jp * aqk;
          a(q, k) = -std::conj(jp) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + std::conj(jp) * vkq;
          v(k, q) = -jp * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x).real() > a(y, y).real(); });
  HermitianSpectrum sp;
  sp.eigenvalues.resize(n);
  sp.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    sp.eigenvalues[k] = a(order[k], order[k]).real();
    sp.eigenvectors.col(k) = v.col(order[k]);
  }
  sp.hermiticity_correction = dev;
  return sp;
}

SchmidtDecomposition schmidt(const PureState& psi, const SiteSet& cut) {
  check_site_set(cut, psi.sites());
  if (static_cast<int>(cut.size()) == psi.sites())
    throw std::invalid_argument("cut must be a proper subset of sites");
  SplitOffsets off = split_offsets(psi.dims, cut);
  const int nk = static_cast<int>(off.keep_off.size());
  const int nc = static_cast<int>(off.comp_off.size());
  Matrix x(nk, nc);
  for (int i = 0; i < nk; ++i)
    for (int c = 0; c < nc; ++c)
      x(i, c) = psi.amps[off.keep_off[i] + off.comp_off[c]];
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  return out;
}

PureState haar_random_pure(std::vector<int> dims, std::uint64_t seed) {
  check_valid_dims(dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector amps(product_dim(dims));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    amps[i] = Complex(re, im);
  }
  return make_pure(std::move(dims), std::move(amps));
}

Matrix haar_random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex rkk = r(k, k);
    if (std::abs(rkk) > 0) q.col(k) *= rkk / std::abs(rkk);
  }
  return q;
}

PureState apply_local_unitaries(const PureState& psi,
                                const std::vector<Matrix>& u) {
  if (static_cast<int>(u.size()) != psi.sites())
    throw std::invalid_argument("one unitary per site required");
  const std::vector<int> strides = index_strides(psi.dims);
  Vector t = psi.amps;
  for (int r = 0; r < psi.sites(); ++r) {
    const int dr = psi.dims[r];
    if (u[r].rows() != dr || u[r].cols() != dr)
      throw std::invalid_argument("unitary size mismatch at site " +
                                  std::to_string(r));
    Vector next = Vector::Zero(psi.dim());
    for (int g = 0; g < psi.dim(); ++g) {
      const int a = (g / strides[r]) % dr;
      const int base = g - a * strides[r];
      for (int b = 0; b < dr; ++b)
        next[base + b * strides[r]] += u[r](b, a) * t[g];
    }
    t = std::move(next);
  }
  PureState out = psi;
  out.amps = std::move(t);
  return out;
}

}  // namespace qtangle
