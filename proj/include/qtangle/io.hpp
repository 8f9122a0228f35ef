#pragma once

#include <string>

#include "qtangle/core.hpp"

namespace qtangle {

/// State file schema: {"dims":[...], "amps":[[re,im],...], "normalized":bool}
/// Amplitude order: last site index fastest. Doubles round-trip bit-exactly.
std::string state_to_json(const PureState& psi);
PureState state_from_json(const std::string& text);

void write_state_file(const PureState& psi, const std::string& path);
PureState read_state_file(const std::string& path);

}  // namespace qtangle
