#pragma once

#include <map>
#include <string>

#include "qtangle/core.hpp"

namespace qtangle {

/// Catalog of the named states: ghz (q, R or explicit weights), w3, w4,
/// cluster, dicke42, double_bell (a,b,c,d), g1..g9 (family parameters),
/// acin (l0..l4, phi).
struct StateSpec {
  std::string family;
  std::map<std::string, double> params;
};

/// Builds a catalog state. Raw mode (normalized = false) keeps the printed
/// coefficients verbatim, which is what the Table 2 checks evaluate.
PureState make_named(const StateSpec& spec, bool normalized = true);

std::vector<std::string> named_families();

}  // namespace qtangle
