#include "qtangle/io.hpp"

#include <fstream>

#include <json.hpp>

#include "qtangle/qstate.hpp"

namespace qtangle {

std::string state_to_json(const PureState& psi) {
  nlohmann::ordered_json j;
  j["dims"] = psi.dims;
  nlohmann::ordered_json amps = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < psi.amps.size(); ++i)
    amps.push_back({psi.amps[i].real(), psi.amps[i].imag()});
  j["amps"] = std::move(amps);
  j["normalized"] = psi.normalized;
  return j.dump();
}

PureState state_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("state file parse error: ") +
                                e.what());
  }
  if (!j.contains("dims") || !j.contains("amps"))
    throw std::invalid_argument("state file missing dims or amps");
  std::vector<int> dims = j["dims"].get<std::vector<int>>();
  const auto& ja = j["amps"];
  Vector amps(ja.size());
  for (std::size_t i = 0; i < ja.size(); ++i) {
    if (!ja[i].is_array() || ja[i].size() != 2)
      throw std::invalid_argument("amplitude entries must be [re, im] pairs");
    amps[static_cast<Eigen::Index>(i)] =
        Complex(ja[i][0].get<double>(), ja[i][1].get<double>());
  }
  const bool normalized = j.value("normalized", true);
  // Raw amplitudes are preserved verbatim so round-trips are bit-exact.
  PureState psi = make_pure(std::move(dims), std::move(amps), true);
  if (normalized && !psi.normalized)
    throw std::invalid_argument("state file claims normalized but norm != 1");
  psi.normalized = normalized;
  return psi;
}

void write_state_file(const PureState& psi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << state_to_json(psi) << "\n";
}

PureState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return state_from_json(text);
}

}  // namespace qtangle
