#include "qtangle/cft.hpp"

#include <cmath>

namespace qtangle {

double twist_dimension(double c) {
  if (c <= 0.0) throw std::invalid_argument("central charge must be > 0");
  return c / 12.0 * (3.0 - 1.0 / 3.0);
}

double ope_coeff_log(double d1, double d2, double d3) {
  const double slack = 1e-12;
  if (d1 <= 0.0 || d2 <= 0.0 || d3 <= 0.0)
    throw std::invalid_argument("dimensions must be positive");
  if (d1 + d2 - d3 <= slack || d2 + d3 - d1 <= slack || d3 + d1 - d2 <= slack)
    throw std::domain_error("dimensions must satisfy strict triangle "
                            "inequalities");
  auto term = [](double a, double b, double c) {
    return 0.5 * a * std::log((a + b - c) * (a + c - b) / (b + c - a));
  };
  const double sum = d1 + d2 + d3;
  return term(d1, d2, d3) + term(d2, d3, d1) + term(d3, d1, d2) +
         0.5 * sum * (std::log(sum) - std::log(4.0)) -
         (d1 * std::log(d1) + d2 * std::log(d2) + d3 * std::log(d3));
}

double ln_tr_neg3(const CFTConfig& cfg) {
  if (cfg.c <= 0.0) throw std::invalid_argument("central charge must be > 0");
  if (cfg.eps <= 0.0) throw std::invalid_argument("cutoff must be > 0");
  const double z12 = cfg.z1 - cfg.z2;
  const double z23 = cfg.z2 - cfg.z3;
  const double z31 = cfg.z3 - cfg.z1;
  if (z12 == 0.0 || z23 == 0.0 || z31 == 0.0)
    throw std::invalid_argument("points must be pairwise distinct");
  const double log_ratio = 2.0 * std::log(std::abs(z12)) +
                           2.0 * std::log(std::abs(z23)) +
                           2.0 * std::log(std::abs(z31)) -
                           6.0 * std::log(cfg.eps);
  return -cfg.c / 9.0 * log_ratio + cfg.c / 3.0 * std::log(0.75);
}

}  // namespace qtangle
