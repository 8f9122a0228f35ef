#include "qtangle/replica.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qtangle/qstate.hpp"

namespace qtangle {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v])
      throw std::invalid_argument("permutation image is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(image_.size());
  for (int x = 0; x < size(); ++x) img[image_[x]] = x;
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& then) const {
  if (size() != then.size())
    throw std::invalid_argument("permutation sizes differ");
  std::vector<int> img(image_.size());
  for (int x = 0; x < size(); ++x) img[x] = image_[then(x)];
  return Permutation(std::move(img));
}

Permutation parse_cycles(const std::string& text, int n) {
  if (n < 1) throw std::invalid_argument("replica count must be >= 1");
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s == "id" || s == "()" || s.empty()) return Permutation(std::move(img));

  std::vector<bool> used(n, false);
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '(')
      throw std::invalid_argument("cycle notation must look like (123)(45)");
    std::vector<int> cycle;
    ++i;
    while (i < s.size() && s[i] != ')') {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      if (j == i) throw std::invalid_argument("expected label inside cycle");
      int label = std::stoi(s.substr(i, j - i));
      if (label < 1 || label > n)
        throw std::invalid_argument("cycle label out of range 1..N");
      if (used[label - 1])
        throw std::invalid_argument("repeated label in cycle notation");
      used[label - 1] = true;
      cycle.push_back(label - 1);
      i = j;
      if (i < s.size() && s[i] == ',') ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("unterminated cycle");
    ++i;  // consume ')'
    for (std::size_t k = 0; k < cycle.size(); ++k)
      img[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation(std::move(img));
}

std::string to_cycles(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::ostringstream out;
  bool any = false;
  for (int start = 0; start < p.size(); ++start) {
    if (seen[start] || p(start) == start) {
      seen[start] = true;
      continue;
    }
    out << '(';
    int x = start;
    do {
      seen[x] = true;
      out << (x + 1);
      x = p(x);
    } while (x != start);
    out << ')';
    any = true;
  }
  return any ? out.str() : "id";
}

ReplicaSpec parse_replica_spec(const std::string& text, int n_replicas) {
  ReplicaSpec spec;
  spec.n_replicas = n_replicas;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';'))
    spec.perms.push_back(parse_cycles(part, n_replicas));
  if (spec.perms.empty())
    throw std::invalid_argument("replica spec has no permutations");
  return spec;
}

namespace {

void check_spec(const PureState& psi, const ReplicaSpec& spec) {
  if (static_cast<int>(spec.perms.size()) != psi.sites())
    throw std::invalid_argument("permutation count must equal site count");
  if (spec.n_replicas < 1)
    throw std::invalid_argument("replica count must be >= 1");
  for (const Permutation& p : spec.perms)
    if (p.size() != spec.n_replicas)
      throw std::invalid_argument("permutation size differs from N");
  double work = 1.0;
  for (int d : psi.dims) work *= std::pow(static_cast<double>(d),
                                          spec.n_replicas);
  if (work > static_cast<double>(1 << 20))
    throw std::invalid_argument(
        "replica contraction exceeds the 2^20 work guard");
}

}  // namespace

Complex multi_invariant(const PureState& psi, const ReplicaSpec& spec) {
  check_spec(psi, spec);
  const int q = psi.sites();
  const int n = spec.n_replicas;
  const std::vector<int> strides = index_strides(psi.dims);

  // Odometer over the q*n site-replica indices i_r(x).
  std::vector<int> digit(static_cast<std::size_t>(q) * n, 0);
  long long total = 1;
  for (int r = 0; r < q; ++r)
    for (int x = 0; x < n; ++x) total *= psi.dims[r];

  Complex z = 0;
  std::vector<int> ket_idx(n), bra_idx(n);
  for (long long step = 0; step < total; ++step) {
    std::fill(ket_idx.begin(), ket_idx.end(), 0);
    std::fill(bra_idx.begin(), bra_idx.end(), 0);
    for (int r = 0; r < q; ++r)
      for (int x = 0; x < n; ++x) {
        const int i_rx = digit[static_cast<std::size_t>(r) * n + x];
        ket_idx[x] += i_rx * strides[r];
        // bra slot y reads i_r(sigma_r^{-1}(y)); scatter forward
        bra_idx[spec.perms[r](x)] += i_rx * strides[r];
      }
    Complex term(1, 0);
    for (int x = 0; x < n && term != Complex(0, 0); ++x)
      term *= psi.amps[ket_idx[x]];
    if (term != Complex(0, 0)) {
      for (int x = 0; x < n; ++x) term *= std::conj(psi.amps[bra_idx[x]]);
      z += term;
    }
    // advance odometer
    for (std::size_t k = digit.size(); k-- > 0;) {
      const int r = static_cast<int>(k) / n;
      if (++digit[k] < psi.dims[r]) break;
      digit[k] = 0;
    }
  }
  return z;
}

double renyi_trace(const PureState& psi, const SiteSet& cut, int n) {
  check_site_set(cut, psi.sites());
  if (n < 1) throw std::invalid_argument("Renyi order must be >= 1");
  ReplicaSpec spec;
  spec.n_replicas = n;
  std::vector<int> cyc(n);
  for (int x = 0; x < n; ++x) cyc[x] = (x + 1) % n;
  Permutation cycle{cyc};
  for (int r = 0; r < psi.sites(); ++r) {
    const bool in_cut = std::binary_search(cut.begin(), cut.end(), r);
    spec.perms.push_back(in_cut ? cycle : Permutation::identity(n));
  }
  return multi_invariant(psi, spec).real();
}

double multi_entropy2(const PureState& psi) {
  const int q = psi.sites();
  if (q < 2) throw std::invalid_argument("multi-entropy needs q >= 2");
  const int n = 1 << (q - 1);
  ReplicaSpec spec;
  spec.n_replicas = n;
  spec.perms.push_back(Permutation::identity(n));
  for (int r = 1; r < q; ++r) {
    std::vector<int> img(n);
    const int bit = 1 << (r - 1);
    for (int x = 0; x < n; ++x) img[x] = x ^ bit;
    spec.perms.emplace_back(std::move(img));
  }
  return multi_invariant(psi, spec).real();
}

ProductCriterion product_criterion(const PureState& psi,
                                   const ReplicaSpec& spec, double tol) {
  for (std::size_t i = 0; i < spec.perms.size(); ++i)
    for (std::size_t j = i + 1; j < spec.perms.size(); ++j)
      if (spec.perms[i] == spec.perms[j])
        throw std::invalid_argument(
            "product criterion requires pairwise distinct permutations");
  const double absz = std::abs(multi_invariant(psi, spec));
  ProductCriterion out;
  out.deficit = 1.0 - absz;
  out.is_product = out.deficit < tol;
  out.flattening_rank_one = flattening_rank_one(psi, tol);
  return out;
}

bool flattening_rank_one(const PureState& psi, double tol) {
  const int q = psi.sites();
  const std::vector<int> strides = index_strides(psi.dims);
  const int total = psi.dim();
  // unit scale for normalized states; raw states compare against max |amp|^2
  double scale = 0.0;
  for (int i = 0; i < total; ++i)
    scale = std::max(scale, std::norm(psi.amps[i]));
  if (scale == 0.0) return false;

  for (int r = 0; r < q; ++r) {
    const int dr = psi.dims[r];
    const int rest = total / dr;
    // row a, column built from the remaining digits
    std::vector<int> rest_off(rest);
    {
      int c = 0;
      for (int g = 0; g < total; ++g) {
        std::vector<int> digits = decode_index(g, psi.dims);
        if (digits[r] != 0) continue;
        rest_off[c++] = g;
      }
    }
    for (int a = 0; a < dr; ++a)
      for (int b = a + 1; b < dr; ++b)
        for (int u = 0; u < rest; ++u)
          for (int v = u + 1; v < rest; ++v) {
            const Complex minor =
                psi.amps[rest_off[u] + a * strides[r]] *
                    psi.amps[rest_off[v] + b * strides[r]] -
                psi.amps[rest_off[u] + b * strides[r]] *
                    psi.amps[rest_off[v] + a * strides[r]];
            if (std::abs(minor) > tol * scale) return false;
          }
  }
  return true;
}

}  // namespace qtangle
