#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles/dawson_ode.hpp"
#include "../oracles/quadrature.hpp"
#include "momentous/special_functions.hpp"

using namespace momentous;
using cplx = std::complex<double>;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Eighth-order central difference with a step small enough for the
// rapidly growing integrands tested here.
template <class F>
double fd8(F f, double x, double h = 2e-3) {
  static constexpr double c[] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  double d = 0.0;
  for (int k = 0; k < 4; ++k) d += c[k] * (f(x + (k + 1) * h) - f(x - (k + 1) * h));
  return d / h;
}

}  // namespace

TEST_CASE("reference values from 30-digit arithmetic") {
  CHECK(rel(dawson(1.0), 0.5380795069127684191363874) < 1e-14);
  CHECK(rel(dawson(0.5), 0.4244363835020222959340424) < 1e-14);
  CHECK(rel(dawson(10.0), 0.05025384718759852803274842) < 1e-14);
  CHECK(rel(dawson(3.7), 0.1407511741154154101830516) < 1e-14);
  CHECK(rel(dawson(cplx(1, 2)), cplx(-13.38892731648291924415696, -11.82871510388959330342997)) <
        1e-12);
  CHECK(rel(dawson(cplx(-0.3, 4.5)), cplx(-215643200.5206430175141143, -456167964.9950415701470364)) <
        1e-12);
  CHECK(rel(dawson(cplx(6, -7)), cplx(287468.3133716496215277915, 266622.7423796342380946622)) <
        1e-12);
  // The argument the kappa = 10 initial state evaluates.
  CHECK(rel(dawson(cplx(0.158, -4.967)), cplx(44794088425.67809316879532, -54842630.01648070864278047)) <
        1e-11);
  CHECK(rel(erfi_real(1.0), 1.650425758797542876025338) < 1e-14);
  CHECK(rel(erfi_real(5.0), 8298273880.676803516146223) < 1e-13);
  CHECK(rel(erfi_real(26.0), 8.314637164730987655299566e+291) < 1e-12);
}

TEST_CASE("symmetries") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(u(rng), u(rng));
    CHECK(rel(dawson(-z), -dawson(z)) < 1e-15);
    CHECK(rel(dawson(std::conj(z)), std::conj(dawson(z))) < 1e-15);
  }
  CHECK(erfi_real(-2.0) == -erfi_real(2.0));
  CHECK(dawson(0.0) == 0.0);
  CHECK(dawson(cplx(0.0, 1.5)).real() == doctest::Approx(0.0));
}

TEST_CASE("erf and erfi agree with direct quadrature") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.5, 5.0}) {
    CHECK(rel(erf_real(x), oracle::erf_quad(x)) < 1e-12);
    CHECK(rel(erfi_real(x), oracle::erfi_quad(x)) < 1e-12);
    CHECK(rel(dawson(x), oracle::dawson_quad(x)) < 1e-12);
  }
}

TEST_CASE("complex Dawson agrees with path quadrature") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 60; ++i) {
    const cplx z(u(rng), u(rng));
    CHECK_MESSAGE(rel(dawson(z), oracle::dawson_quad(z)) < 1e-10, "z = " << z);
  }
}

TEST_CASE("defining ODE residuals") {
  auto F = [](double x) { return dawson(x); };
  for (double x = -6.0; x <= 6.0; x += 0.37) {
    CHECK(std::abs(fd8(F, x) - (1.0 - 2.0 * x * dawson(x))) < 1e-8);
    if (std::abs(x) < 4.0) {
      const double de = fd8([](double t) { return erfi_real(t); }, x);
      CHECK(rel(de, 2.0 / std::sqrt(oracle::pi) * std::exp(x * x)) < 1e-8);
    }
  }
  // F is analytic, so the derivative along the real direction is F'(z).
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const cplx z(u(rng), u(rng));
    const cplx d(fd8([&](double s) { return dawson(z + s).real(); }, 0.0),
                 fd8([&](double s) { return dawson(z + s).imag(); }, 0.0));
    const cplx want = 1.0 - 2.0 * z * dawson(z);
    CHECK(std::abs(d - want) <= 1e-8 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("Dawson matches the integrated initial-value problem") {
  std::vector<double> xs;
  for (double x = 0.25; x <= 12.0; x += 0.25) xs.push_back(x);
  const auto ref = oracle::dawson_ode(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(rel(dawson(xs[i]), ref[i]) < 1e-10);
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(erf_real(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(erfi_real(27.0), std::domain_error);
  CHECK_NOTHROW(erfi_real(kErfiBound));
  CHECK_THROWS_AS(dawson(cplx(0.0, 60.0)), std::domain_error);
  CHECK_THROWS_AS(dawson(cplx(std::nan(""), 0.0)), std::domain_error);
  CHECK_NOTHROW(dawson(49.0));
}

TEST_CASE("Faddeeva function in the upper half plane") {
  // w(iy) = exp(y^2) erfc(y) for real y.
  for (double y : {0.1, 1.0, 3.0}) {
    const double want = std::exp(y * y) * std::erfc(y);
    CHECK(rel(faddeeva_upper(cplx(0.0, y)).real(), want) < 1e-12);
  }
}
