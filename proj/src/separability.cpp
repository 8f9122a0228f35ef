#include "qtangle/separability.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "qtangle/qstate.hpp"
#include "qtangle/tangle2.hpp"
#include "qtangle/tangle3.hpp"

namespace qtangle {

namespace {

// --- fast pure-state functionals on raw amplitude vectors ------------------

inline void singular_values_2x2(const Eigen::Matrix2cd& m, double& s1,
                                double& s2) {
  const double g11 = std::norm(m(0, 0)) + std::norm(m(1, 0));
  const double g22 = std::norm(m(0, 1)) + std::norm(m(1, 1));
  const Complex g12 = std::conj(m(0, 0)) * m(0, 1) +
                      std::conj(m(1, 0)) * m(1, 1);
  const double tr = g11 + g22;
  const double det = std::max(0.0, g11 * g22 - std::norm(g12));
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double e1 = 0.5 * (tr + disc);
  const double e2 = e1 > 0.0 ? det / e1 : 0.0;
  s1 = std::sqrt(e1);
  s2 = std::sqrt(e2);
}

// Pairwise two-tangle inside a three-qubit pure state via the
// preconcurrence matrix Q = X^T (sy x sy) X of the pair/environment
// flattening; the Wootters lambdas are the singular values of Q.
inline double pair_tangle_3q(const Vector& t, int p0, int p1) {
  const int env = 3 - p0 - p1;
  const int sp0 = 1 << (2 - p0), sp1 = 1 << (2 - p1), se = 1 << (2 - env);
  Eigen::Matrix2cd q;
  for (int c = 0; c < 2; ++c)
    for (int cp = 0; cp < 2; ++cp) {
      const Complex x00 = t[c * se], x01 = t[sp1 + c * se];
      const Complex x10 = t[sp0 + c * se], x11 = t[sp0 + sp1 + c * se];
      const Complex y00 = t[cp * se], y01 = t[sp1 + cp * se];
      const Complex y10 = t[sp0 + cp * se], y11 = t[sp0 + sp1 + cp * se];
      q(c, cp) = -x00 * y11 - x11 * y00 + x01 * y10 + x10 * y01;
    }
  double s1, s2;
  singular_values_2x2(q, s1, s2);
  const double conc = s1 - s2;
  return conc * conc;
}

inline double three_tangle_fast(const Vector& t) {
  const Complex d1 = t[0] * t[0] * t[7] * t[7] + t[1] * t[1] * t[6] * t[6] +
                     t[2] * t[2] * t[5] * t[5] + t[4] * t[4] * t[3] * t[3];
  const Complex d2 = t[0] * t[7] * t[3] * t[4] + t[0] * t[7] * t[5] * t[2] +
                     t[0] * t[7] * t[6] * t[1] + t[3] * t[4] * t[5] * t[2] +
                     t[3] * t[4] * t[6] * t[1] + t[5] * t[2] * t[6] * t[1];
  const Complex d3 = t[0] * t[6] * t[5] * t[3] + t[7] * t[1] * t[2] * t[4];
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

inline double i5_fast_3q(const Vector& t) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int bc = 0; bc < 4; ++bc)
      for (int bc2 = 0; bc2 < 4; ++bc2)
        rho(bc, bc2) += t[4 * a + bc] * std::conj(t[4 * a + bc2]);
  Eigen::Matrix4cd g;  // partial transpose on the last kept site
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c)
      for (int b2 = 0; b2 < 2; ++b2)
        for (int c2 = 0; c2 < 2; ++c2)
          g(2 * b + c, 2 * b2 + c2) = rho(2 * b + c2, 2 * b2 + c);
  return (g * g * g).trace().real();
}

inline double phi_pure_fast(const Vector& t) {
  const double i5 = i5_fast_3q(t);
  const double taus = pair_tangle_3q(t, 0, 1) + pair_tangle_3q(t, 0, 2) +
                      pair_tangle_3q(t, 1, 2);
  return 12.0 * (1.0 - i5) + 27.0 * taus + 40.5 * three_tangle_fast(t);
}

inline double two_tangle_2q_fast(const Vector& t) {
  return 4.0 * std::norm(t[0] * t[3] - t[1] * t[2]);
}

Matrix complete_basis(const Matrix& thin) {
  const int d = static_cast<int>(thin.rows());
  const int r = static_cast<int>(thin.cols());
  Matrix full(d, d);
  full.leftCols(r) = thin;
  int c = r;
  std::mt19937_64 rng(1u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int trial = 0;
  while (c < d) {
    Vector v;
    if (trial < d) {
      v = Vector::Zero(d);
      v[trial] = 1.0;
    } else {
      v.resize(d);
      for (int i = 0; i < d; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    }
    ++trial;
    for (int k = 0; k < c; ++k) v -= full.col(k) * full.col(k).dot(v);
    const double n = v.norm();
    if (n > 1e-6) full.col(c++) = v / n;
  }
  return full;
}

}  // namespace

RoofMeasure roof_measure_from_string(const std::string& name) {
  if (name == "phi") return RoofMeasure::kPhi;
  if (name == "one_minus_i5") return RoofMeasure::kOneMinusI5;
  if (name == "one_minus_absZ") return RoofMeasure::kOneMinusAbsZ;
  if (name == "two_tangle") return RoofMeasure::kTwoTangle;
  if (name == "three_tangle") return RoofMeasure::kThreeTangle;
  throw std::invalid_argument("unknown roof measure: " + name);
}

namespace {

// Ensemble state of one optimizer restart. Rotating rows (i,j) of the
// mixing isometry only touches the two corresponding ensemble vectors, so
// the workspace keeps the vectors and their objective contributions.
struct RoofWorkspace {
  std::vector<Vector> w;
  std::vector<double> contrib;
  const std::function<double(const Vector&)>* f;
  mutable Vector scratch_i, scratch_j, scratch_n;

  double term(const Vector& v) const {
    const double p = v.squaredNorm();
    if (p < 1e-14) return 0.0;
    scratch_n = v / std::sqrt(p);
    return p * (*f)(scratch_n);
  }
  double total() const {
    return std::accumulate(contrib.begin(), contrib.end(), 0.0);
  }
};

}  // namespace

RoofEstimate minimize_over_decompositions(
    const DensityMatrix& rho, const std::function<double(const Vector&)>& f,
    const RoofOptions& opts) {
  HermitianSpectrum sp = hermitian_eig(rho.mat);
  if (sp.eigenvalues.minCoeff() < -kTolPsd)
    throw std::invalid_argument("density matrix has negative eigenvalue");
  int rank = 0;
  for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k)
    if (sp.eigenvalues[k] > 1e-12) ++rank;
  if (rank > 8)
    throw std::invalid_argument("convex roof supports rank <= 8 only");

  const int d = rho.dim();
  Matrix cols(d, rank);
  for (int k = 0; k < rank; ++k)
    cols.col(k) = std::sqrt(sp.eigenvalues[k]) * sp.eigenvectors.col(k);

  RoofEstimate est;
  est.seed = opts.seed;
  est.restarts = opts.restarts;
  est.budget_exhausted = false;

  if (rank == 1) {
    est.value = f(sp.eigenvectors.col(0));
    est.ensemble_size = 1;
    return est;
  }

  std::ofstream trace;
  if (!opts.trace_csv_path.empty()) {
    trace.open(opts.trace_csv_path);
    trace << "restart,iteration,objective\n";
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int m_lo = rank, m_hi = 2 * rank;
  const int m_count = m_hi - m_lo + 1;
  double best = std::numeric_limits<double>::infinity();
  int best_m = rank;

  constexpr int kThetaGrid = 9, kPhaseGrid = 8;

  for (int restart = 0; restart < opts.restarts; ++restart) {
    const int m = m_lo + restart % m_count;
    RoofWorkspace ws;
    ws.f = &f;
    ws.w.assign(m, Vector::Zero(d));
    ws.scratch_i.resize(d);
    ws.scratch_j.resize(d);
    if (restart < m_count) {
      for (int k = 0; k < rank; ++k) ws.w[k] = cols.col(k);  // eigen ensemble
    } else {
      Matrix g(m, rank);
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < rank; ++k)
          g(i, k) = Complex(gauss(rng), gauss(rng));
      Eigen::HouseholderQR<Matrix> qr(g);
      Matrix v = qr.householderQ() * Matrix::Identity(m, rank);
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < rank; ++k)
          ws.w[i] += std::conj(v(i, k)) * cols.col(k);
    }
    ws.contrib.resize(m);
    for (int i = 0; i < m; ++i) ws.contrib[i] = ws.term(ws.w[i]);
    double current = ws.total();

    bool exhausted = true;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      const double before = current;
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          double ti = 0.0, tj = 0.0;
          auto pair_value = [&](double theta, double phase) {
            const double c = std::cos(theta), s = std::sin(theta);
            const Complex e(std::cos(phase), std::sin(phase));
            ws.scratch_i = c * ws.w[i] - s * e * ws.w[j];
            ws.scratch_j = s * std::conj(e) * ws.w[i] + c * ws.w[j];
            ti = ws.term(ws.scratch_i);
            tj = ws.term(ws.scratch_j);
            return ti + tj;
          };
          const double base = ws.contrib[i] + ws.contrib[j];
          double bt = 0.0, bp = 0.0, bv = base;
          for (int pg = 0; pg < kPhaseGrid; ++pg) {
            const double phase = 2.0 * M_PI * pg / kPhaseGrid;
            for (int tg = 0; tg < kThetaGrid; ++tg) {
              const double theta = -M_PI_2 + M_PI * tg / (kThetaGrid - 1);
              const double v = pair_value(theta, phase);
              if (v < bv - 1e-15) {
                bv = v;
                bt = theta;
                bp = phase;
              }
            }
          }
          if (bv >= base - 1e-15) continue;
          auto ternary = [&](double& x, double half_width, bool is_theta,
                             int iters) {
            double lo = x - half_width, hi = x + half_width;
            for (int it = 0; it < iters; ++it) {
              const double m1 = lo + (hi - lo) / 3.0;
              const double m2 = hi - (hi - lo) / 3.0;
              const double v1 =
                  is_theta ? pair_value(m1, bp) : pair_value(bt, m1);
              const double v2 =
                  is_theta ? pair_value(m2, bp) : pair_value(bt, m2);
              if (v1 < v2)
                hi = m2;
              else
                lo = m1;
            }
            x = 0.5 * (lo + hi);
          };
          ternary(bt, M_PI / (kThetaGrid - 1), true, 28);
          ternary(bp, M_PI / kPhaseGrid, false, 24);
          ternary(bt, 0.02, true, 16);
          const double v = pair_value(bt, bp);
          if (v < base - 1e-15) {
            ws.w[i].swap(ws.scratch_i);
            ws.w[j].swap(ws.scratch_j);
            ws.contrib[i] = ti;
            ws.contrib[j] = tj;
            current = ws.total();
          }
        }
      }
      if (trace.is_open())
        trace << restart << ',' << sweep << ',' << current << '\n';
      if (before - current < opts.tol_decrease) {
        exhausted = false;
        break;
      }
    }
    if (current < best) {
      best = current;
      best_m = m;
      est.budget_exhausted = exhausted;
    }
  }

  est.value = best;
  est.ensemble_size = best_m;
  return est;
}

RoofEstimate convex_roof(const DensityMatrix& rho, RoofMeasure measure,
                         RoofOptions opts) {
  const std::vector<int>& dims = rho.dims;
  const int q = static_cast<int>(dims.size());
  const bool three_qubits = dims == std::vector<int>{2, 2, 2};

  std::function<double(const Vector&)> f;
  switch (measure) {
    case RoofMeasure::kTwoTangle:
      if (dims != std::vector<int>{2, 2})
        throw std::invalid_argument("two_tangle roof requires dims = [2,2]");
      f = two_tangle_2q_fast;
      break;
    case RoofMeasure::kThreeTangle:
      if (!three_qubits)
        throw std::invalid_argument(
            "three_tangle roof requires dims = [2,2,2]");
      f = three_tangle_fast;
      break;
    case RoofMeasure::kPhi:
      if (!three_qubits)
        throw std::invalid_argument("phi roof requires dims = [2,2,2]");
      f = phi_pure_fast;
      break;
    case RoofMeasure::kOneMinusI5: {
      if (q != 3)
        throw std::invalid_argument("1 - I5 roof requires a tripartite state");
      if (three_qubits) {
        f = [](const Vector& t) {
          return std::pow(std::max(0.0, 1.0 - i5_fast_3q(t)), 2.0 / 3.0);
        };
      } else {
        f = [dims](const Vector& t) {
          PureState psi = make_pure(dims, t, true);
          return std::pow(std::max(0.0, 1.0 - i5_pt_traced(psi, 0)),
                          2.0 / 3.0);
        };
      }
      break;
    }
    case RoofMeasure::kOneMinusAbsZ: {
      ReplicaSpec spec;
      if (opts.replica) {
        spec = *opts.replica;
      } else if (q == 2) {
        spec.n_replicas = 2;
        spec.perms = {Permutation::identity(2), parse_cycles("(12)", 2)};
      } else if (q == 3) {
        spec.n_replicas = 3;
        spec.perms = {Permutation::identity(3), parse_cycles("(123)", 3),
                      parse_cycles("(132)", 3)};
      } else {
        throw std::invalid_argument(
            "one_minus_absZ roof needs an explicit replica spec for q > 3");
      }
      const double expo = 2.0 / spec.n_replicas;
      f = [dims, spec, expo](const Vector& t) {
        PureState psi = make_pure(dims, t, true);
        const double absz = std::abs(multi_invariant(psi, spec));
        return std::pow(std::max(0.0, 1.0 - absz), expo);
      };
      break;
    }
  }
  return minimize_over_decompositions(rho, f, opts);
}

// --- PPT and the rank-2 lemma ------------------------------------------------

PptResult ppt_check(const DensityMatrix& rho, const SiteSet& cut) {
  const int q = static_cast<int>(rho.dims.size());
  check_site_set(cut, q);
  if (static_cast<int>(cut.size()) == q)
    throw std::invalid_argument("cut must be a proper subset");
  Matrix g = partial_transpose(rho, cut);
  HermitianSpectrum sp = hermitian_eig(g);
  PptResult out;
  out.min_eigenvalue = sp.eigenvalues[sp.eigenvalues.size() - 1];
  out.is_ppt = out.min_eigenvalue >= -1e-10;
  int d_cut = 1;
  for (int s : cut) d_cut *= rho.dims[s];
  const int d_rest = rho.dim() / d_cut;
  const int lo = std::min(d_cut, d_rest), hi = std::max(d_cut, d_rest);
  out.decisive = lo == 2 && (hi == 2 || hi == 3);
  return out;
}

bool rank2_coherence_sep(double mu0, double mu1, Complex s) {
  if (mu0 < 0.0 || mu1 < 0.0)
    throw std::invalid_argument("weights must be nonnegative");
  return std::abs(s) < 1e-10;
}

// --- GHZ rigidity --------------------------------------------------------------

namespace {

Vector rotate_to_bases(const PureState& psi, const std::vector<Matrix>& u) {
  const int q = psi.sites();
  Vector t = psi.amps;
  const std::vector<int> strides = index_strides(psi.dims);
  for (int r = 0; r < q; ++r) {
    const int dr = psi.dims[r];
    Vector next = Vector::Zero(psi.dim());
    for (int g = 0; g < psi.dim(); ++g) {
      const int a = (g / strides[r]) % dr;
      const int base = g - a * strides[r];
      for (int b = 0; b < dr; ++b)
        next[base + b * strides[r]] += std::conj(u[r](a, b)) * t[g];
    }
    t = std::move(next);
  }
  return t;
}

double off_diagonal_mass(const Vector& t, const std::vector<int>& dims) {
  const std::vector<int> strides = index_strides(dims);
  const int dmin = *std::min_element(dims.begin(), dims.end());
  double diag = 0.0;
  for (int j = 0; j < dmin; ++j) {
    int g = 0;
    for (std::size_t r = 0; r < dims.size(); ++r) g += j * strides[r];
    diag += std::norm(t[g]);
  }
  return std::max(0.0, t.squaredNorm() - diag);
}

// Entanglement certificate for the reduction on `keep`: nonzero pairwise
// Wootters tangle or an NPT bipartition.
bool certified_entangled(const PureState& psi, const SiteSet& keep) {
  const int nq = static_cast<int>(keep.size());
  if (nq < 2) return false;
  for (int i = 0; i < nq; ++i)
    for (int j = i + 1; j < nq; ++j)
      if (psi.dims[keep[i]] == 2 && psi.dims[keep[j]] == 2) {
        DensityMatrix pair = partial_trace(psi, {keep[i], keep[j]});
        if (wootters_mixed(pair) > 1e-8) return true;
      }
  DensityMatrix rho = partial_trace(psi, keep);
  for (int i = 0; i < nq; ++i) {
    Matrix g = partial_transpose(rho, {i});
    HermitianSpectrum sp = hermitian_eig(g);
    if (sp.eigenvalues[sp.eigenvalues.size() - 1] < -1e-9) return true;
  }
  return false;
}

}  // namespace

RigidityResult ghz_rigidity_detect(const PureState& psi, double tol) {
  const int q = psi.sites();
  RigidityResult res;
  if (q < 2) throw std::invalid_argument("rigidity needs at least 2 sites");

  if (q == 2) {
    // Schmidt form is exactly the bipartite generalized GHZ form.
    SchmidtDecomposition sd = schmidt(psi, {0});
    GHZForm form;
    form.rank = 0;
    for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k)
      if (sd.coefficients[k] > 1e-10) ++form.rank;
    form.weights =
        sd.coefficients.head(form.rank).cast<Complex>();
    form.local_unitaries = {complete_basis(sd.left),
                            complete_basis(sd.right)};
    res.outcome = RigidityOutcome::kFound;
    res.form = std::move(form);
    return res;
  }

  std::vector<HermitianSpectrum> spectra;
  std::vector<Matrix> bases;
  spectra.reserve(q);
  for (int r = 0; r < q; ++r) {
    spectra.push_back(hermitian_eig(partial_trace(psi, {r}).mat));
    bases.push_back(spectra.back().eigenvectors);
  }

  int rank = 0;
  for (Eigen::Index k = 0; k < spectra[0].eigenvalues.size(); ++k)
    if (spectra[0].eigenvalues[k] > 1e-10) ++rank;

  // GHZ forms share the single-site spectrum across sites.
  for (int r = 1; r < q; ++r)
    for (int k = 0; k < rank; ++k) {
      if (k >= spectra[r].eigenvalues.size() ||
          std::abs(spectra[0].eigenvalues[k] - spectra[r].eigenvalues[k]) >
              1e-6) {
        res.outcome = RigidityOutcome::kAbsent;
        return res;
      }
    }

  auto finish_if_diagonal = [&](const std::vector<Matrix>& u) -> bool {
    Vector t = rotate_to_bases(psi, u);
    res.off_diagonal_mass = off_diagonal_mass(t, psi.dims);
    if (res.off_diagonal_mass > tol) return false;
    GHZForm form;
    form.rank = rank;
    form.local_unitaries = u;
    form.weights = Vector::Zero(rank);
    const std::vector<int> strides = index_strides(psi.dims);
    for (int j = 0; j < rank; ++j) {
      int g = 0;
      for (int r = 0; r < q; ++r) g += j * strides[r];
      form.weights[j] = t[g];
    }
    const double norm = form.weights.norm();
    res.fidelity_deficit = std::max(0.0, 1.0 - norm);
    form.weights /= norm;
    res.form = std::move(form);
    res.outcome = RigidityOutcome::kFound;
    return true;
  };

  if (finish_if_diagonal(bases)) return res;

  // Decisive negative: an entangled (q-1)-site reduction rules the form out.
  for (int x = 0; x < q; ++x) {
    SiteSet keep;
    for (int r = 0; r < q; ++r)
      if (r != x) keep.push_back(r);
    if (certified_entangled(psi, keep)) {
      res.outcome = RigidityOutcome::kAbsent;
      return res;
    }
  }

  bool degenerate = false;
  for (int r = 0; r < q && !degenerate; ++r)
    for (int k = 0; k + 1 < rank && !degenerate; ++k)
      if (spectra[r].eigenvalues[k] - spectra[r].eigenvalues[k + 1] < 1e-6)
        degenerate = true;

  if (degenerate) {
    // Joint diagonalization with filtered single-site targets: for a GHZ
    // form, Tr_{!=r}[F_s|psi><psi|F_s] is diagonal in the same basis with
    // generically split weights, which breaks the degeneracy.
    std::mt19937_64 rng(0xC0FFEE);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::vector<int> strides = index_strides(psi.dims);
    std::vector<Matrix> refined(q);
    for (int r = 0; r < q; ++r) {
      const int s = (r + 1) % q;
      const int ds = psi.dims[s];
      Matrix target = partial_trace(psi, {r}).mat;
      for (int rep = 0; rep < 2; ++rep) {
        Matrix fs(ds, ds);
        for (int i = 0; i < ds; ++i)
          for (int j = 0; j < ds; ++j)
            fs(i, j) = Complex(gauss(rng), gauss(rng));
        fs = 0.5 * (fs + fs.adjoint()).eval();
        PureState filtered = psi;
        Vector amps = Vector::Zero(psi.dim());
        for (int g = 0; g < psi.dim(); ++g) {
          const int a = (g / strides[s]) % ds;
          const int base = g - a * strides[s];
          for (int b = 0; b < ds; ++b)
            amps[base + b * strides[s]] += fs(b, a) * psi.amps[g];
        }
        const double n2 = amps.squaredNorm();
        if (n2 < 1e-12) continue;
        filtered.amps = std::move(amps);
        target += (0.31 + 0.17 * rep) / n2 * partial_trace(filtered, {r}).mat;
      }
      refined[r] = hermitian_eig(target).eigenvectors;
    }
    // Align per-site labels against site 0 by where the mass sits.
    Vector t = rotate_to_bases(psi, refined);
    for (int r = 1; r < q; ++r) {
      const int d0 = psi.dims[0], dr = psi.dims[r];
      Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(d0, dr);
      for (int g = 0; g < psi.dim(); ++g) {
        std::vector<int> digits = decode_index(g, psi.dims);
        mass(digits[0], digits[r]) += std::norm(t[g]);
      }
      std::vector<int> assign(d0, -1);
      std::vector<bool> used(dr, false);
      for (int step = 0; step < std::min(d0, dr); ++step) {
        int bi = -1, bk = -1;
        double bv = -1.0;
        for (int i = 0; i < d0; ++i) {
          if (assign[i] >= 0) continue;
          for (int k = 0; k < dr; ++k) {
            if (used[k]) continue;
            if (mass(i, k) > bv) {
              bv = mass(i, k);
              bi = i;
              bk = k;
            }
          }
        }
        assign[bi] = bk;
        used[bk] = true;
      }
      Matrix permuted = refined[r];
      for (int i = 0; i < d0 && i < dr; ++i)
        if (assign[i] >= 0) permuted.col(i) = refined[r].col(assign[i]);
      refined[r] = permuted;
    }
    if (finish_if_diagonal(refined)) return res;
    res.outcome = RigidityOutcome::kInconclusive;
    return res;
  }

  res.outcome = RigidityOutcome::kAbsent;
  return res;
}

// --- five-conditions scan -------------------------------------------------------

FiveConditionsReport five_conditions_scan(const PureState& psi, double tol) {
  if (psi.dims != std::vector<int>{2, 2, 2, 2})
    throw std::invalid_argument("five-conditions scan requires four qubits");

  FiveConditionsReport rep{};
  RoofOptions quick;
  quick.restarts = 8;
  quick.max_sweeps = 120;
  const double margin = 1e-3;

  auto keep_of = [](int traced) {
    SiteSet keep;
    for (int r = 0; r < 4; ++r)
      if (r != traced) keep.push_back(r);
    return keep;
  };

  // (i)-(iv): full-separability proxy per traced site; entanglement
  // certificates shortcut the roof optimizer.
  auto assess = [&](int traced, double& phi_est) {
    SiteSet keep = keep_of(traced);
    if (certified_entangled(psi, keep)) {
      double taus = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          taus += wootters_mixed(partial_trace(psi, {keep[i], keep[j]}));
      // E_phi >= 27 sum of pairwise roofs; keep above the margin regardless
      phi_est = std::max(27.0 * taus, 2.0 * margin);
      return false;
    }
    DensityMatrix rho = partial_trace(psi, keep);
    phi_est = convex_roof(rho, RoofMeasure::kPhi, quick).value;
    return phi_est < tol;
  };

  rep.cond[0] = assess(0, rep.phi_estimate[0]);
  rep.cond[1] = assess(1, rep.phi_estimate[1]);
  rep.cond[2] = assess(2, rep.phi_estimate[2]);
  const bool abc_separable = assess(3, rep.phi_estimate[3]);
  rep.cond[3] = !abc_separable && rep.phi_estimate[3] > margin;

  // (v): cheap upper bound from the eigen-ensemble first; escalate to the
  // optimizer only while the conjunction is still alive.
  const bool alive = rep.cond[0] && rep.cond[1] && rep.cond[2] && rep.cond[3];
  bool tangles_vanish = true;
  for (int traced = 0; traced < 4; ++traced) {
    DensityMatrix rho = partial_trace(psi, keep_of(traced));
    HermitianSpectrum sp = hermitian_eig(rho.mat);
    double bound = 0.0;
    for (Eigen::Index k = 0; k < sp.eigenvalues.size(); ++k)
      if (sp.eigenvalues[k] > 1e-12)
        bound += sp.eigenvalues[k] * three_tangle_fast(sp.eigenvectors.col(k));
    if (bound >= tol && alive)
      bound = convex_roof(rho, RoofMeasure::kThreeTangle, quick).value;
    rep.tangle_estimate[traced] = bound;
    if (bound >= tol) tangles_vanish = false;
  }
  rep.cond[4] = tangles_vanish;

  rep.violating = rep.cond[0] && rep.cond[1] && rep.cond[2] && rep.cond[3] &&
                  rep.cond[4];
  return rep;
}

}  // namespace qtangle
