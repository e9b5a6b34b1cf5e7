#include <doctest.h>

#include "momentous/selfcheck.hpp"
#include "momentous/state.hpp"

using namespace momentous;

TEST_CASE("random states clear the floor with the requested margin") {
  std::mt19937_64 rng(101);
  for (Mode mode : {Mode::sphere, Mode::circle}) {
    for (int i = 0; i < 200; ++i) {
      const auto s = random_valid_state(mode, rng, {});
      const double nu = min_symplectic_eigenvalue(s);
      CHECK(nu >= 0.5 * (1.0 + 1e-3) * (1.0 - 1e-12));
      CHECK(nu <= 4.0 * (1.0 + 1e-12));
      CHECK(validate_state(s, {}, 0.0).valid());
      if (mode == Mode::sphere) CHECK(std::abs(std::sin(s.classical.theta)) > 0.3);
    }
  }
}

TEST_CASE("symplectic eigenvalue of a product state") {
  MomentState s;
  s.mode = Mode::sphere;
  s.moments = {};
  s.moments[0] = 2.0;  // G2000
  s.moments[4] = 1.0;  // G0200
  s.moments[7] = 0.5;  // G0020
  s.moments[9] = 8.0;  // G0002
  CHECK(min_symplectic_eigenvalue(s) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("oracle suite passes and detects a corrupted bracket") {
  SelfCheckOptions o;
  o.random_states = 20;
  CHECK(oracle_suite(o).pass());
  o.flip_bracket = std::pair<std::size_t, std::size_t>{0, 4};
  CHECK_FALSE(oracle_suite(o).pass());
}

TEST_CASE("suite selection") {
  SelfCheckOptions o;
  o.suites = {"uncertainty"};
  const auto r = run_selfcheck(o);
  REQUIRE(r.size() == 1);
  CHECK(r[0].suite == "uncertainty");
  CHECK(r[0].pass());
  o.suites = {"nonsense"};
  CHECK_THROWS_AS(run_selfcheck(o), ConfigError);
  CHECK(suite_names().size() == 4);
}

TEST_CASE("conservation and convergence suites") {
  CHECK(conservation_suite().pass());
  CHECK(convergence_suite().pass());
}
