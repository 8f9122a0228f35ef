#include "qtangle/states.hpp"

#include <cmath>

#include "qtangle/qstate.hpp"
#include "qtangle/tangle3.hpp"

namespace qtangle {

namespace {

double get_param(const StateSpec& spec, const std::string& key,
                 double fallback, bool required = false) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    if (required)
      throw std::invalid_argument("missing parameter '" + key + "' for " +
                                  spec.family);
    return fallback;
  }
  return it->second;
}

PureState from_amps(std::vector<int> dims, Vector amps, bool normalized) {
  return make_pure(std::move(dims), std::move(amps), !normalized);
}

Vector zeros16() { return Vector::Zero(16); }

}  // namespace

std::vector<std::string> named_families() {
  return {"ghz",  "w3", "w4", "cluster", "dicke42", "double_bell",
          "g1",   "g2", "g3", "g4",      "g5",      "g6",
          "g7",   "g8", "g9", "acin"};
}

PureState make_named(const StateSpec& spec, bool normalized) {
  const std::string& f = spec.family;

  if (f == "ghz") {
    const int q = static_cast<int>(get_param(spec, "q", 4));
    const int d = static_cast<int>(get_param(spec, "d", 2));
    int rank = static_cast<int>(get_param(spec, "R", 2));
    if (q < 2 || d < 2 || rank < 1 || rank > d)
      throw std::invalid_argument("ghz requires q >= 2, d >= 2, 1 <= R <= d");
    std::vector<double> weights(rank);
    bool any = false;
    for (int j = 0; j < rank; ++j) {
      weights[j] = get_param(spec, "l" + std::to_string(j),
                             1.0 / std::sqrt(static_cast<double>(rank)));
      any = any || spec.params.count("l" + std::to_string(j)) > 0;
    }
    if (!any && spec.params.count("a")) {
      if (rank != 2) throw std::invalid_argument("a,b weights imply R = 2");
      weights[0] = get_param(spec, "a", 0.0, true);
      weights[1] = get_param(spec, "b", 0.0, true);
    }
    std::vector<int> dims(q, d);
    Vector amps = Vector::Zero(product_dim(dims));
    const std::vector<int> strides = index_strides(dims);
    for (int j = 0; j < rank; ++j) {
      int g = 0;
      for (int r = 0; r < q; ++r) g += j * strides[r];
      amps[g] = weights[j];
    }
    return from_amps(std::move(dims), std::move(amps), normalized);
  }

  if (f == "w3") {
    Vector amps = Vector::Zero(8);
    amps[0b100] = amps[0b010] = amps[0b001] = 1.0 / std::sqrt(3.0);
    return from_amps({2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "w4") {
    Vector amps = zeros16();
    amps[0b0001] = amps[0b0010] = amps[0b0100] = amps[0b1000] = 0.5;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "cluster") {
    Vector amps = zeros16();
    amps[0b0000] = amps[0b0011] = amps[0b1100] = 0.5;
    amps[0b1111] = -0.5;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "dicke42") {
    Vector amps = zeros16();
    const double v = 1.0 / std::sqrt(6.0);
    for (int r : {0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100}) amps[r] = v;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "double_bell") {
    const double a = get_param(spec, "a", 0.0, true);
    const double b = get_param(spec, "b", 0.0, true);
    const double c = get_param(spec, "c", 0.0, true);
    const double d = get_param(spec, "d", 0.0, true);
    if (std::abs(a * a + b * b - 1.0) > 1e-9 ||
        std::abs(c * c + d * d - 1.0) > 1e-9)
      throw std::invalid_argument(
          "double_bell requires |a|^2+|b|^2 = |c|^2+|d|^2 = 1");
    Vector amps = zeros16();
    amps[0b0000] = a * c;
    amps[0b0011] = a * d;
    amps[0b1100] = b * c;
    amps[0b1111] = b * d;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g1") {
    const double a = get_param(spec, "a", 0.0, true);
    const double b = get_param(spec, "b", 0.0, true);
    const double c = get_param(spec, "c", 0.0, true);
    const double d = get_param(spec, "d", 0.0, true);
    Vector amps = zeros16();
    amps[0b0000] = amps[0b1111] = 0.5 * (a + d);
    amps[0b0011] = amps[0b1100] = 0.5 * (a - d);
    amps[0b0101] = amps[0b1010] = 0.5 * (b + c);
    amps[0b0110] = amps[0b1001] = 0.5 * (b - c);
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g2") {
    const double a = get_param(spec, "a", 0.0, true);
    const double b = get_param(spec, "b", 0.0, true);
    const double c = get_param(spec, "c", 0.0, true);
    Vector amps = zeros16();
    amps[0b0000] = amps[0b1111] = 0.5 * (a + b);
    amps[0b0011] = amps[0b1100] = 0.5 * (a - b);
    amps[0b0101] = amps[0b1010] = c;
    amps[0b0110] = 1.0;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g3") {
    const double a = get_param(spec, "a", 0.0, true);
    const double b = get_param(spec, "b", 0.0, true);
    Vector amps = zeros16();
    amps[0b0000] = amps[0b1111] = a;
    amps[0b0101] = amps[0b1010] = b;
    amps[0b0110] = amps[0b0011] = 1.0;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g4") {
    const double a = get_param(spec, "a", 0.0, true);
    const double b = get_param(spec, "b", 0.0, true);
    Vector amps = zeros16();
    amps[0b0000] = amps[0b1111] = a;
    amps[0b0101] = amps[0b1010] = 0.5 * (a + b);
    amps[0b0110] = amps[0b1001] = 0.5 * (a - b);
    const Complex is2 = Complex(0.0, 1.0 / std::sqrt(2.0));
    amps[0b0001] = amps[0b0010] = amps[0b0111] = amps[0b1011] = is2;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g5") {
    const double a = get_param(spec, "a", 0.0, true);
    Vector amps = zeros16();
    amps[0b0000] = amps[0b0101] = amps[0b1010] = amps[0b1111] = a;
    amps[0b0001] = Complex(0, 1);
    amps[0b0110] = 1.0;
    amps[0b1011] = Complex(0, -1);
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g6") {
    const double a = get_param(spec, "a", 0.0, true);
    Vector amps = zeros16();
    amps[0b0000] = amps[0b1111] = a;
    amps[0b0011] = amps[0b0101] = amps[0b0110] = 1.0;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g7") {
    Vector amps = zeros16();
    amps[0b0000] = amps[0b0101] = amps[0b1000] = amps[0b1110] = 1.0;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g8") {
    Vector amps = zeros16();
    amps[0b0000] = amps[0b1011] = amps[0b1101] = amps[0b1110] = 1.0;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "g9") {
    Vector amps = zeros16();
    amps[0b0000] = amps[0b0111] = 1.0;
    return from_amps({2, 2, 2, 2}, std::move(amps), normalized);
  }

  if (f == "acin") {
    AcinParams p;
    p.l0 = get_param(spec, "l0", 0.0, true);
    p.l1 = get_param(spec, "l1", 0.0, true);
    p.l2 = get_param(spec, "l2", 0.0, true);
    p.l3 = get_param(spec, "l3", 0.0, true);
    p.l4 = get_param(spec, "l4", 0.0, true);
    p.phase = get_param(spec, "phi", 0.0);
    PureState psi = acin_state(p);
    if (!normalized) psi.normalized = false;
    return psi;
  }

  throw std::invalid_argument("unknown state family: " + f);
}

}  // namespace qtangle
