#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtangle/core.hpp"

namespace qtangle {

struct Check {
  std::string name;
  double residual;   // worst observed value of the tested quantity
  double tolerance;  // pass iff residual <= tolerance
  bool pass;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed;
  long long samples;
  std::vector<Check> checks;

  bool pass() const;
  void add(const std::string& name, double residual, double tolerance);
};

/// Route equivalences and invariant relations on Haar states per arity.
VerifyReport verify_identities(int states_per_arity, std::uint64_t seed);

/// Appendix bound verification over canonical-form samples.
VerifyReport verify_bounds_suite(long long samples, std::uint64_t seed);

/// Closed-form column reproduction for the nine four-qubit families.
VerifyReport verify_table2(int tuples_per_family, std::uint64_t seed);

/// Product criterion, GHZ rigidity, and the five-conditions scan.
VerifyReport verify_propositions(int samples, std::uint64_t seed);

/// Four-tangle versus linear-entropy tangles on named and Haar states.
VerifyReport verify_gour(int samples, std::uint64_t seed);

std::string verify_report_to_json(const VerifyReport& report);

}  // namespace qtangle
