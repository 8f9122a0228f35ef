#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qtangle/core.hpp"
#include "qtangle/replica.hpp"

namespace qtangle {

struct PptResult {
  bool is_ppt;
  double min_eigenvalue;
  bool decisive;  // 2x2 or 2x3 cut, where PPT decides separability
};

PptResult ppt_check(const DensityMatrix& rho, const SiteSet& cut);

/// Lemma for rank-2 states mu0|x0 y0><x0 y0| + mu1|x1 y1><x1 y1| + coherence
/// s: separable iff s = 0 (PT spectrum {mu0, mu1, |s|, -|s|}).
bool rank2_coherence_sep(double mu0, double mu1, Complex s);

struct GHZForm {
  int rank;
  Vector weights;                       // complex, sum |w|^2 = 1
  std::vector<Matrix> local_unitaries;  // per site; columns are the basis
};

enum class RigidityOutcome { kFound, kAbsent, kInconclusive };

struct RigidityResult {
  RigidityOutcome outcome = RigidityOutcome::kAbsent;
  std::optional<GHZForm> form;
  double off_diagonal_mass = 0.0;
  double fidelity_deficit = 0.0;  // meaningful when found
};

/// Detects local-unitary equivalence to sum_j w_j |j...j>. Degenerate
/// single-site spectra that defeat the basis choice yield kInconclusive.
RigidityResult ghz_rigidity_detect(const PureState& psi, double tol = 1e-8);

struct FiveConditionsReport {
  // (i)..(iii): rho with site A/B/C traced out consistent with fully
  // separable; (iv): rho_ABC not fully separable; (v): all four three-tangle
  // roofs vanish.
  bool cond[5];
  bool violating;
  double phi_estimate[4];     // traced site A,B,C,D order
  double tangle_estimate[4];  // tau_BCD, tau_ACD, tau_ABD, tau_ABC
};

FiveConditionsReport five_conditions_scan(const PureState& psi,
                                          double tol = 1e-6);

enum class RoofMeasure {
  kPhi,
  kOneMinusI5,    // (1 - I5)^(2/3)
  kOneMinusAbsZ,  // (1 - |Z|)^(2/N)
  kTwoTangle,
  kThreeTangle,
};

RoofMeasure roof_measure_from_string(const std::string& name);

struct RoofOptions {
  int restarts = 32;
  int max_sweeps = 500;
  std::uint64_t seed = 0xC0FFEE;
  double tol_decrease = 1e-8;
  std::optional<ReplicaSpec> replica;  // required data for kOneMinusAbsZ
  std::string trace_csv_path;          // per-iteration trace when nonempty
};

struct RoofEstimate {
  double value;
  int ensemble_size;      // m of the best decomposition found
  int restarts;
  bool budget_exhausted;  // sweep cap hit before the decrease tolerance
  std::uint64_t seed;
};

/// Upper bound on the convex roof of the chosen pure-state measure,
/// minimized over ensemble decompositions of rho (rank <= 8).
RoofEstimate convex_roof(const DensityMatrix& rho, RoofMeasure measure,
                         RoofOptions opts = {});

/// Generic engine: decompositions are parameterized by m x r isometries
/// mixing the eigen-purification, m swept over {r, ..., 2r}.
RoofEstimate minimize_over_decompositions(
    const DensityMatrix& rho, const std::function<double(const Vector&)>& f,
    const RoofOptions& opts);

}  // namespace qtangle
