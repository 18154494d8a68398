#pragma once

#include <cmath>
#include <complex>

#include "hnl/errors.hpp"

namespace hnl {

using Cplx = std::complex<double>;

inline bool is_finite(Cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool in_upper_half_plane(Cplx z) { return z.imag() > 0.0; }
inline bool in_lower_half_plane(Cplx z) { return z.imag() < 0.0; }

inline void require_finite(Cplx z, const char* who) {
  if (!is_finite(z)) {
    throw DomainError(std::string(who) + ": non-finite complex value");
  }
}

inline void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(who) + ": non-finite value");
  }
}

}  // namespace hnl
