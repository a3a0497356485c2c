#ifndef LAV_SPECIAL_HPP
#define LAV_SPECIAL_HPP

// Complex log-gamma by Stirling's series after upward shifting, with
// reflection for the left half-plane.

#include "lav/numeric.hpp"

namespace lav {

inline cplx lgamma_c(cplx z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    cplx s = std::sin(kPi * z);
    if (std::abs(s) == 0.0) throw std::domain_error("lgamma at a pole");
    return std::log(kPi) - std::log(s) - lgamma_c(1.0 - z);
  }
  cplx shift = 0;
  while (std::abs(z) < 18.0 || z.real() < 18.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // Bernoulli terms B_{2j} / (2j (2j - 1) z^{2j-1})
  static const double b[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360, 1.0 / 156};
  cplx zi = 1.0 / z, z2 = zi * zi, term = zi, series = 0;
  for (double c : b) {
    series += c * term;
    term *= z2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series - shift;
}

inline double lgamma_r(double x) { return lgamma_c(cplx(x, 0)).real(); }

}  // namespace lav

#endif  // LAV_SPECIAL_HPP
