#pragma once

#include <complex>

namespace momentous {

/// Real error function. Throws std::domain_error on non-finite input.
double erf_real(double x);

/// Largest |x| for which erfi(x) is representable in double precision.
inline constexpr double kErfiBound = 26.5;

/// erfi(x) = -i erf(ix). Throws std::domain_error for |x| > kErfiBound.
double erfi_real(double x);

inline constexpr double kDawsonBound = 50.0;

/// Dawson function F(z) = exp(-z^2) * integral_0^z exp(t^2) dt, entire in z.
/// Throws std::domain_error for |z| > kDawsonBound or non-finite z.
std::complex<double> dawson(std::complex<double> z);
double dawson(double x);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
std::complex<double> faddeeva_upper(std::complex<double> z);

}  // namespace momentous
