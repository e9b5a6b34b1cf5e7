#include "momentous/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace momentous {

namespace {

using cplx = std::complex<double>;

constexpr double kSqrtPi = 1.77245385090551602729816748334;

// Maclaurin series; cancellation costs at most ~2 digits for |z| < 2.
cplx dawson_series(cplx z) {
  const cplx z2 = -2.0 * z * z;
  cplx term = z;
  cplx sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= z2 / static_cast<double>(2 * n + 1);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Rybicki's exponentially convergent sampling sum, valid for modest |Im z|.
cplx dawson_rybicki(cplx z) {
  constexpr double h = 0.2;
  constexpr int kTerms = 41;
  const double n0 = 2.0 * std::round(z.real() / (2.0 * h));
  const cplx xp = z - n0 * h;
  cplx sum = 0.0;
  for (int k = -kTerms; k <= kTerms; k += 2) {
    const cplx d = xp - static_cast<double>(k) * h;
    sum += std::exp(-d * d) / (n0 + k);
  }
  return sum / kSqrtPi;
}

}  // namespace

double erf_real(double x) {
  if (!std::isfinite(x)) throw std::domain_error("erf_real: non-finite argument");
  return std::erf(x);
}

cplx faddeeva_upper(cplx z) {
  if (z.imag() < 0.0) throw std::domain_error("faddeeva_upper: Im z must be >= 0");
  // Laplace continued fraction, modified Lentz evaluation.
  constexpr double tiny = 1e-300;
  cplx f = z;
  cplx c = f;
  cplx d = 0.0;
  for (int n = 1; n < 100000; ++n) {
    const double a = -0.5 * n;
    d = z + a * d;
    if (d == 0.0) d = tiny;
    c = z + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const cplx delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return cplx(0.0, 1.0 / kSqrtPi) / f;
}

cplx dawson(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("dawson: non-finite argument");
  if (std::abs(z) > kDawsonBound)
    throw std::domain_error("dawson: |z| exceeds " + std::to_string(kDawsonBound));

  // Odd and conjugation-symmetric: fold into the closed first quadrant.
  const double sign = z.real() < 0.0 ? -1.0 : 1.0;
  z *= sign;
  const bool conj = z.imag() < 0.0;
  if (conj) z = std::conj(z);

  cplx r;
  if (std::abs(z) < 2.0) {
    r = dawson_series(z);
  } else if (z.imag() <= 1.0) {
    r = dawson_rybicki(z);
  } else {
    // F(z) = i sqrt(pi)/2 (exp(-z^2) - w(z))
    const cplx e = std::exp(-z * z);
    r = cplx(0.0, 0.5 * kSqrtPi) * (e - faddeeva_upper(z));
  }
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw std::domain_error("dawson: result overflows double precision");
  if (conj) r = std::conj(r);
  return sign * r;
}

double dawson(double x) { return dawson(cplx(x, 0.0)).real(); }

double erfi_real(double x) {
  if (!std::isfinite(x)) throw std::domain_error("erfi_real: non-finite argument");
  if (std::abs(x) > kErfiBound)
    throw std::domain_error("erfi_real: |x| exceeds overflow bound " + std::to_string(kErfiBound));
  return 2.0 / kSqrtPi * std::exp(x * x) * dawson(x);
}

}  // namespace momentous
