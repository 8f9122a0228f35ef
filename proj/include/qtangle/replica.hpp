#pragma once

#include <string>

#include "qtangle/core.hpp"

namespace qtangle {

/// Bijection on replica labels {1..N}, stored 0-based.
class Permutation {
 public:
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int x) const { return image_[x]; }  // 0-based
  const std::vector<int>& image() const { return image_; }

  Permutation inverse() const;
  Permutation compose(const Permutation& then) const;  // this after then

  bool operator==(const Permutation& o) const { return image_ == o.image_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }

 private:
  std::vector<int> image_;
};

/// Parses disjoint cycle notation over labels 1..n, e.g. "(123)", "(12)(3)",
/// or "id". Singleton cycles may be omitted.
Permutation parse_cycles(const std::string& text, int n);

/// Canonical cycle string: cycles sorted by smallest element, each cycle
/// rotated to start at its smallest element; identity prints as "id".
std::string to_cycles(const Permutation& p);

struct ReplicaSpec {
  int n_replicas;
  std::vector<Permutation> perms;  // one per site
};

/// Parses "id;(123);(132)" into one permutation per site.
ReplicaSpec parse_replica_spec(const std::string& text, int n_replicas);

/// <Psi^xN | Omega_1 ... Omega_q | Psi^xN> by direct index bookkeeping.
/// Guarded at (prod dims)^N <= 2^20 work units.
Complex multi_invariant(const PureState& psi, const ReplicaSpec& spec);

/// Tr rho_cut^n via the cyclic permutation on the cut sites.
double renyi_trace(const PureState& psi, const SiteSet& cut, int n);

/// q-partite 2nd Renyi multi-entropy on the replica hypercube, N = 2^(q-1).
double multi_entropy2(const PureState& psi);

struct ProductCriterion {
  bool is_product;
  double deficit;            // 1 - |Z|
  bool flattening_rank_one;  // independent cross-check
};

/// |Z| = 1 criterion for fully product states; requires pairwise distinct
/// permutations.
ProductCriterion product_criterion(const PureState& psi,
                                   const ReplicaSpec& spec, double tol = 1e-9);

/// True when every 2x2 minor of every single-site flattening vanishes
/// within tol (rank-one coefficient tensor).
bool flattening_rank_one(const PureState& psi, double tol = 1e-9);

}  // namespace qtangle
