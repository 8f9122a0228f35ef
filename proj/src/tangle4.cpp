#include "qtangle/tangle4.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qtangle/qstate.hpp"
#include "qtangle/tangle2.hpp"
#include "qtangle/tangle3.hpp"

namespace qtangle {

namespace {

void require_four_qubits(const PureState& psi) {
  if (psi.dims != std::vector<int>{2, 2, 2, 2})
    throw std::invalid_argument("operation requires dims = [2,2,2,2]");
}

// Sites 0..3 carry the quadrilinear variables x,y,z,w; amplitude index
// r = 8j + 4k + 2l + m.
int amp_index(int j, int k, int l, int m) { return 8 * j + 4 * k + 2 * l + m; }

// D_uv: determinant of the 3x3 coefficient matrix of the biquadratic in
// (u, v) obtained from det of the Hessian of the quadrilinear form with
// respect to the two remaining sites.
Complex d_uv(const Vector& t, int u_site, int v_site) {
  int rest[2], n = 0;
  for (int s = 0; s < 4; ++s)
    if (s != u_site && s != v_site) rest[n++] = s;

  // F_{cd}[alpha][beta]: coefficient of u_alpha v_beta in d^2A/(dr1_c dr2_d)
  Complex f[2][2][2][2];
  for (int c = 0; c < 2; ++c)
    for (int d = 0; d < 2; ++d)
      for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
          int idx[4];
          idx[u_site] = al;
          idx[v_site] = be;
          idx[rest[0]] = c;
          idx[rest[1]] = d;
          f[c][d][al][be] = t[amp_index(idx[0], idx[1], idx[2], idx[3])];
        }

  // det F = F00 F11 - F01 F10 as a biquadratic: B[m][n] over monomials
  // (u0^2, u0 u1, u1^2) x (v0^2, v0 v1, v1^2).
  Eigen::Matrix3cd b = Eigen::Matrix3cd::Zero();
  auto accumulate = [&](const Complex p[2][2], const Complex q[2][2],
                        double sign) {
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            b(a1 + a2, b1 + b2) += sign * p[a1][b1] * q[a2][b2];
  };
  accumulate(f[0][0], f[1][1], 1.0);
  accumulate(f[0][1], f[1][0], -1.0);
  return b.determinant();
}

}  // namespace

Complex h_coeff(const PureState& psi) {
  require_four_qubits(psi);
  const Vector& a = psi.amps;
  return a[0] * a[15] - a[1] * a[14] - a[2] * a[13] + a[3] * a[12] -
         a[4] * a[11] + a[5] * a[10] + a[6] * a[9] - a[7] * a[8];
}

Complex h_spinflip(const PureState& psi) {
  require_four_qubits(psi);
  // Omega |jklm> = (-1)^(j+k+l+m) |~j ~k ~l ~m>; contract <Psi*| without
  // conjugating the amplitudes.
  Complex acc = 0;
  for (int r = 0; r < 16; ++r) {
    const int pop = __builtin_popcount(static_cast<unsigned>(r));
    const double sign = (pop % 2 == 0) ? 1.0 : -1.0;
    acc += psi.amps[r] * sign * psi.amps[15 - r];
  }
  return 0.5 * acc;
}

std::tuple<Complex, Complex, Complex> lmn(const PureState& psi) {
  require_four_qubits(psi);
  const Vector& a = psi.amps;
  Eigen::Matrix4cd l, m, n;
  l << a[0], a[4], a[8], a[12], a[1], a[5], a[9], a[13], a[2], a[6], a[10],
      a[14], a[3], a[7], a[11], a[15];
  m << a[0], a[8], a[2], a[10], a[1], a[9], a[3], a[11], a[4], a[12], a[6],
      a[14], a[5], a[13], a[7], a[15];
  n << a[0], a[1], a[8], a[9], a[2], a[3], a[10], a[11], a[4], a[5], a[12],
      a[13], a[6], a[7], a[14], a[15];
  return {l.determinant(), m.determinant(), n.determinant()};
}

std::tuple<Complex, Complex, Complex, Complex> w_invariant(
    const PureState& psi) {
  require_four_qubits(psi);
  const Complex dxy = d_uv(psi.amps, 0, 1);
  const Complex dxz = d_uv(psi.amps, 0, 2);
  const Complex dxw = d_uv(psi.amps, 0, 3);
  return {dxy, dxz, dxw, dxy + dxz + dxw};
}

Complex d_pair(const PureState& psi, int u_site, int v_site) {
  require_four_qubits(psi);
  if (u_site < 0 || u_site > 3 || v_site < 0 || v_site > 3 ||
      u_site == v_site)
    throw std::invalid_argument("d_pair needs two distinct sites in 0..3");
  return d_uv(psi.amps, u_site, v_site);
}

QuadInvariants quad_invariants(const PureState& psi) {
  QuadInvariants q;
  q.H = h_coeff(psi);
  std::tie(q.L, q.M, q.N) = lmn(psi);
  q.Sigma = q.L * q.L + q.M * q.M + q.N * q.N;
  q.Pi = (q.L - q.M) * (q.M - q.N) * (q.N - q.L);
  std::tie(q.D_xy, q.D_xz, q.D_xw, q.W) = w_invariant(psi);
  const Complex h = q.H, s = q.Sigma, p = q.Pi, w = q.W;
  const Complex h2 = h * h, h3 = h2 * h;
  q.Delta = -(4.0 * h3 * h3 * p + 6.0 * h3 * h2 * s * w - 3.0 * h2 * h2 * s * s -
              48.0 * h3 * p * w - 4.0 * h3 * w * w * w + 48.0 * h2 * p * s -
              60.0 * h2 * s * w * w + 96.0 * h * s * s * w + 64.0 * p * p +
              96.0 * p * w * w - 32.0 * s * s * s + 36.0 * w * w * w * w) /
            108.0;
  return q;
}

Complex hyperdet4(const PureState& psi) { return quad_invariants(psi).Delta; }

double four_tangle_mixed(const DensityMatrix& rho) {
  if (rho.dims != std::vector<int>{2, 2, 2, 2})
    throw std::invalid_argument("four-tangle requires a 16x16 four-qubit "
                                "density matrix");
  validate_density(rho);
  Matrix y(2, 2);
  y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  Matrix flip = y;
  for (int k = 0; k < 3; ++k) {
    Matrix next(flip.rows() * 2, flip.cols() * 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        next.block(i * flip.rows(), j * flip.cols(), flip.rows(),
                   flip.cols()) = y(i, j) * flip;
    flip = next;
  }
  Matrix sqrt_rho = detail::hermitian_sqrt_psd(rho.mat);
  Matrix sqrt_tilde = flip * sqrt_rho.conjugate() * flip;
  Eigen::JacobiSVD<Matrix> svd(sqrt_rho * sqrt_tilde);
  const auto& sv = svd.singularValues();
  double c = sv[0];
  for (Eigen::Index k = 1; k < sv.size(); ++k) c -= sv[k];
  c = std::max(0.0, c);
  return c * c;
}

double gour_identity_check(const PureState& psi) {
  require_four_qubits(psi);
  double singles = 0.0;
  for (int x = 0; x < 4; ++x) singles += two_tangle_pure(psi, {x});
  double pairs = 0.0;
  for (const SiteSet& cut : {SiteSet{0, 1}, SiteSet{0, 2}, SiteSet{0, 3}})
    pairs += two_tangle_pure(psi, cut);
  const double four_tangle = 4.0 * std::norm(h_coeff(psi));
  return std::abs(four_tangle - (singles - pairs));
}

const MeasureEntry& MeasureReport::at(const std::string& name) const {
  for (const MeasureEntry& e : entries)
    if (e.name == name) return e;
  throw std::out_of_range("no measure named " + name);
}

MeasureReport measure_set_18(const PureState& psi, RoofOptions opts) {
  require_four_qubits(psi);
  PureState st = make_pure(psi.dims, psi.amps, false);  // report normalizes

  MeasureReport rep;
  rep.seed = opts.seed;
  rep.restarts = opts.restarts;
  const char site_name[4] = {'A', 'B', 'C', 'D'};

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double tau = wootters_mixed(partial_trace(st, {i, j}));
      rep.entries.push_back({std::string("tau_") + site_name[i] + site_name[j],
                             tau, false});
    }

  struct Triple {
    SiteSet sites;
    std::string suffix;
  };
  std::vector<Triple> triples;
  for (int traced = 3; traced >= 0; --traced) {
    Triple t;
    for (int s = 0; s < 4; ++s)
      if (s != traced) {
        t.sites.push_back(s);
        t.suffix.push_back(site_name[s]);
      }
    triples.push_back(std::move(t));
  }

  auto reduced_measure = [&](const DensityMatrix& rho, RoofMeasure measure,
                             double& value, bool& optimizer) {
    const double purity = trace_power(rho.mat, 2).real();
    if (purity > 1.0 - 1e-12) {
      HermitianSpectrum sp = hermitian_eig(rho.mat);
      PureState pure = make_pure(rho.dims, sp.eigenvectors.col(0), false);
      value = measure == RoofMeasure::kThreeTangle ? three_tangle(pure)
                                                   : phi_decomposed(pure);
      optimizer = false;
    } else {
      RoofOptions local = opts;
      value = convex_roof(rho, measure, local).value;
      optimizer = true;
    }
  };

  std::vector<MeasureEntry> phis;
  for (const Triple& t : triples) {
    DensityMatrix rho = partial_trace(st, t.sites);
    double tau, phi;
    bool tau_opt, phi_opt;
    reduced_measure(rho, RoofMeasure::kThreeTangle, tau, tau_opt);
    reduced_measure(rho, RoofMeasure::kPhi, phi, phi_opt);
    rep.entries.push_back({"tau_" + t.suffix, tau, tau_opt});
    phis.push_back({"phi_" + t.suffix, phi, phi_opt});
  }
  for (MeasureEntry& e : phis) rep.entries.push_back(std::move(e));

  QuadInvariants q = quad_invariants(st);
  rep.entries.push_back({"fourtangle", 4.0 * std::norm(q.H), false});
  rep.entries.push_back({"sigma_root", std::sqrt(std::abs(q.Sigma)), false});
  rep.entries.push_back({"pi_root", std::pow(std::abs(q.Pi), 1.0 / 3.0),
                         false});
  rep.entries.push_back({"delta_root", std::pow(std::abs(q.Delta), 1.0 / 6.0),
                         false});
  return rep;
}

std::string report_to_json(const MeasureReport& report) {
  nlohmann::ordered_json j;
  for (const MeasureEntry& e : report.entries) {
    j[e.name] = {{"value", e.value},
                 {"provenance", e.optimizer ? "optimizer" : "closed-form"}};
  }
  nlohmann::ordered_json out;
  out["measures"] = std::move(j);
  out["seed"] = report.seed;
  out["restarts"] = report.restarts;
  return out.dump(2);
}

}  // namespace qtangle
