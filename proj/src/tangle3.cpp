#include "qtangle/tangle3.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "qtangle/qstate.hpp"
#include "qtangle/replica.hpp"
#include "qtangle/tangle2.hpp"

namespace qtangle {

namespace {

void require_tripartite(const PureState& psi) {
  if (psi.sites() != 3)
    throw std::invalid_argument("operation requires a tripartite state");
}

void require_three_qubits(const PureState& psi) {
  if (psi.dims != std::vector<int>{2, 2, 2})
    throw std::invalid_argument("operation requires dims = [2,2,2]");
}

}  // namespace

double i5_pt_traced(const PureState& psi, int traced_site) {
  require_tripartite(psi);
  if (traced_site < 0 || traced_site > 2)
    throw std::invalid_argument("traced site must be 0, 1 or 2");
  SiteSet keep;
  for (int r = 0; r < 3; ++r)
    if (r != traced_site) keep.push_back(r);
  DensityMatrix rho = partial_trace(psi, keep);
  Matrix g = partial_transpose(rho, {1});
  return trace_power(g, 3).real();
}

double i5_pt(const PureState& psi) {
  require_tripartite(psi);
  const double v0 = i5_pt_traced(psi, 0);
  const double v1 = i5_pt_traced(psi, 1);
  const double v2 = i5_pt_traced(psi, 2);
  if (std::abs(v0 - v1) > 1e-9 || std::abs(v0 - v2) > 1e-9)
    throw std::logic_error("I5 disagrees across traced sites");
  return v0;
}

double i5_replica(const PureState& psi) {
  require_tripartite(psi);
  ReplicaSpec spec;
  spec.n_replicas = 3;
  spec.perms = {Permutation::identity(3), parse_cycles("(123)", 3),
                parse_cycles("(132)", 3)};
  return multi_invariant(psi, spec).real();
}

double three_tangle(const PureState& psi) {
  require_three_qubits(psi);
  const Vector& t = psi.amps;  // t[4j+2k+l]
  const Complex d1 = t[0] * t[0] * t[7] * t[7] + t[1] * t[1] * t[6] * t[6] +
                     t[2] * t[2] * t[5] * t[5] + t[4] * t[4] * t[3] * t[3];
  const Complex d2 = t[0] * t[7] * t[3] * t[4] + t[0] * t[7] * t[5] * t[2] +
                     t[0] * t[7] * t[6] * t[1] + t[3] * t[4] * t[5] * t[2] +
                     t[3] * t[4] * t[6] * t[1] + t[5] * t[2] * t[6] * t[1];
  const Complex d3 = t[0] * t[6] * t[5] * t[3] + t[7] * t[1] * t[2] * t[4];
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

double three_tangle_ckw(const PureState& psi) {
  require_three_qubits(psi);
  const double tau_a_bc = two_tangle_pure(psi, {0});
  const double tau_ab = wootters_mixed(partial_trace(psi, {0, 1}));
  const double tau_ac = wootters_mixed(partial_trace(psi, {0, 2}));
  return tau_a_bc - tau_ab - tau_ac;
}

double phi_direct(const PureState& psi) {
  require_three_qubits(psi);
  DensityMatrix rho_ab = partial_trace(psi, {0, 1});
  DensityMatrix rho_a = partial_trace(psi, {0});
  DensityMatrix rho_b = partial_trace(psi, {1});
  Matrix k = 2.0 * rho_ab.mat;
  const Matrix id2 = Matrix::Identity(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      k.block(2 * i, 2 * j, 2, 2) += rho_a.mat(i, j) * id2;
      if (i == j) k.block(2 * i, 2 * j, 2, 2) += rho_b.mat;
    }
  return 69.0 - trace_power(k, 3).real() -
         3.0 * trace_power(rho_ab.mat, 2).real();
}

double phi_decomposed(const PureState& psi) {
  require_three_qubits(psi);
  const double i5 = i5_pt(psi);
  const double tau_ab = wootters_mixed(partial_trace(psi, {0, 1}));
  const double tau_ac = wootters_mixed(partial_trace(psi, {0, 2}));
  const double tau_bc = wootters_mixed(partial_trace(psi, {1, 2}));
  return 12.0 * (1.0 - i5) + 27.0 * (tau_ab + tau_ac + tau_bc) +
         40.5 * three_tangle(psi);
}

PureState acin_state(const AcinParams& p) {
  for (double l : {p.l0, p.l1, p.l2, p.l3, p.l4})
    if (l < 0.0) throw std::invalid_argument("Acin lambdas must be >= 0");
  if (p.phase < 0.0 || p.phase >= M_PI + 1e-12)
    throw std::invalid_argument("Acin phase must lie in [0, pi)");
  const double norm2 = p.l0 * p.l0 + p.l1 * p.l1 + p.l2 * p.l2 +
                       p.l3 * p.l3 + p.l4 * p.l4;
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw std::invalid_argument("Acin lambdas must satisfy sum l^2 = 1");
  Vector amps = Vector::Zero(8);
  amps[0b000] = p.l0;
  amps[0b100] = p.l1 * Complex(std::cos(p.phase), std::sin(p.phase));
  amps[0b101] = p.l2;
  amps[0b110] = p.l3;
  amps[0b111] = p.l4;
  return make_pure({2, 2, 2}, std::move(amps), true);
}

namespace {

void check_simplex(const SimplexPoint& pt) {
  for (double v : {pt.a, pt.b, pt.c, pt.d, pt.e})
    if (v < -1e-12) throw std::invalid_argument("simplex entries must be >= 0");
  if (std::abs(pt.a + pt.b + pt.c + pt.d + pt.e - 1.0) > 1e-10)
    throw std::invalid_argument("simplex entries must sum to 1");
}

}  // namespace

double i5_closed_form(const SimplexPoint& pt, double phase) {
  check_simplex(pt);
  const double a = pt.a, b = pt.b, c = pt.c, d = pt.d, e = pt.e;
  const double cubes = a * a * a + b * b * b + c * c * c + d * d * d +
                       e * e * e;
  const double squares =
      3.0 * (a * a * b + a * b * b + b * b * c + b * c * c + b * b * d +
             b * d * d + c * c * e + c * e * e + d * d * e + d * e * e);
  const double triples = 3.0 * (a * b * c + a * b * d + a * c * d + b * c * d +
                                b * c * e + b * d * e + c * d * e);
  const double cross = 6.0 * std::sqrt(std::max(b * c * d * e, 0.0)) *
                       (b + c + d + e) * std::cos(phase);
  return cubes + squares + triples + cross;
}

double phi_closed_form(const SimplexPoint& pt, double phase) {
  check_simplex(pt);
  const double a = pt.a, b = pt.b, c = pt.c, d = pt.d, e = pt.e;
  return 18.0 * (11.0 * a * (1.0 - a) - 11.0 * a * b + 8.0 * b * e -
                 3.0 * a * (c + d) + (8.0 - 4.0 * a) * c * d -
                 4.0 * (4.0 - a) * std::sqrt(std::max(b * c * d * e, 0.0)) *
                     std::cos(phase));
}

double i5_reduced_objective(double a, double b, double s, double y) {
  const double e = 1.0 - a - b - s;
  return 1.0 + 3.0 * (a + b) * (a + b) + 3.0 * b * s - 3.0 * a - 3.0 * b +
         3.0 * (2.0 * a - 1.0) * y * y -
         6.0 * (1.0 - a) * std::sqrt(std::max(b * e, 0.0)) * y;
}

double phi_reduced_objective(double a, double b, double s) {
  const double e = 1.0 - a - b - s;
  return 11.0 * a * (1.0 - a) - 11.0 * a * b + 8.0 * b * e - 3.0 * a * s +
         (2.0 - a) * s * s +
         2.0 * (4.0 - a) * s * std::sqrt(std::max(b * e, 0.0));
}

BoundPair verify_bounds(long long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);

  BoundPair out;
  out.i5_min = {BoundKind::kI5Lower, std::numeric_limits<double>::infinity(),
                {}, samples, seed};
  out.phi_max = {BoundKind::kPhiUpper,
                 -std::numeric_limits<double>::infinity(), {}, samples, seed};
  out.i5_bound_respected = true;
  out.phi_bound_respected = true;

  auto consider = [&](const SimplexPoint& pt) {
    const double i5 = i5_reduced_objective(pt.a, pt.b, pt.s(), pt.y());
    const double phi = 18.0 * phi_reduced_objective(pt.a, pt.b, pt.s());
    if (i5 < out.i5_min.value) {
      out.i5_min.value = i5;
      out.i5_min.argument = pt;
    }
    if (phi > out.phi_max.value) {
      out.phi_max.value = phi;
      out.phi_max.argument = pt;
    }
    if (i5 < 2.0 / 9.0 - 1e-9) out.i5_bound_respected = false;
    if (phi > 99.0 / 2.0 + 1e-9) out.phi_bound_respected = false;
  };

  // the paper's saturating points, injected explicitly
  consider({1.0 / 3.0, 0.0, 1.0 / 3.0, 1.0 / 3.0, 0.0});  // W-state
  consider({0.5, 0.0, 0.0, 0.0, 0.5});                    // GHZ-state

  for (long long k = 0; k < samples; ++k) {
    double v[5];
    double total = 0.0;
    for (double& x : v) {
      x = expo(rng);
      total += x;
    }
    SimplexPoint pt{v[0] / total, v[1] / total, v[2] / total, v[3] / total,
                    v[4] / total};
    consider(pt);
  }
  return out;
}

std::string bounds_to_json(const BoundPair& bp) {
  auto obj = [](const BoundObjective& b) {
    nlohmann::ordered_json j;
    j["objective"] = b.which == BoundKind::kI5Lower ? "I5-lower" : "Phi-upper";
    j["extremum"] = b.value;
    j["argument"] = {{"a", b.argument.a}, {"b", b.argument.b},
                     {"c", b.argument.c}, {"d", b.argument.d},
                     {"e", b.argument.e}};
    j["samples"] = b.samples;
    j["seed"] = b.seed;
    return j;
  };
  nlohmann::ordered_json j;
  j["i5"] = obj(bp.i5_min);
  j["phi"] = obj(bp.phi_max);
  j["i5_bound_respected"] = bp.i5_bound_respected;
  j["phi_bound_respected"] = bp.phi_bound_respected;
  return j.dump(2);
}

}  // namespace qtangle
