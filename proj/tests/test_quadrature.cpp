#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "jpitt/quadrature.hpp"

using namespace jpitt;
using namespace jpitt::quad;
using Catch::Approx;

TEST_CASE("adaptive GK15 on smooth integrands") {
  QuadratureSpec spec;
  auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846, spec);
  CHECK(r.value == Approx(2.0).epsilon(1e-12));

  r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0, spec);
  CHECK(r.value == Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-12));
}

TEST_CASE("adaptive GK15 handles oscillatory integrands") {
  QuadratureSpec spec;
  // int_0^10 cos(40 x) dx = sin(400)/40
  auto r = integrate_adaptive([](double x) { return std::cos(40.0 * x); }, 0.0, 10.0, spec);
  CHECK(r.value == Approx(std::sin(400.0) / 40.0).margin(1e-10));
}

TEST_CASE("max_panels exhaustion raises") {
  QuadratureSpec spec;
  spec.max_panels = 4;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 1e-16;
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::cos(300.0 * x) / std::sqrt(x + 1e-8); },
                                     0.0, 10.0, spec),
                  NonConvergenceError);
}

TEST_CASE("graded origin resolves integrable power singularities") {
  QuadratureSpec spec;
  for (double a : {0.2, 0.5, 0.9, 0.985}) {
    auto r = integrate_graded_zero([a](double x) { return std::pow(x, -a); }, 1.0, spec);
    CHECK_FALSE(r.divergent);
    CHECK(r.value == Approx(1.0 / (1.0 - a)).epsilon(1e-6));
  }
}

TEST_CASE("graded origin flags non-integrable singularities") {
  QuadratureSpec spec;
  for (double a : {1.0, 1.01, 1.5}) {
    auto r = integrate_graded_zero([a](double x) { return std::pow(x, -a); }, 1.0, spec);
    CHECK(r.divergent);
    CHECK(r.regime == DivergenceRegime::near_zero);
  }
}

TEST_CASE("tail integration detects decay and divergence") {
  QuadratureSpec spec;
  auto r = integrate_tail([](double x) { return std::exp(-x); }, 1.0, spec);
  CHECK_FALSE(r.divergent);
  CHECK(r.value == Approx(std::exp(-1.0)).epsilon(1e-9));

  // slowly decaying convergent power tail, closed by extrapolation
  r = integrate_tail([](double x) { return std::pow(x, -1.3); }, 1.0, spec);
  CHECK_FALSE(r.divergent);
  CHECK(r.value == Approx(1.0 / 0.3).epsilon(1e-4));

  for (double a : {1.0, 0.7}) {
    auto d = integrate_tail([a](double x) { return std::pow(x, -a); }, 1.0, spec);
    CHECK(d.divergent);
    CHECK(d.regime == DivergenceRegime::far_field);
  }
}

TEST_CASE("semi-axis composition") {
  QuadratureSpec spec;
  auto r = integrate_zero_to_inf([](double x) { return std::exp(-x) / std::sqrt(x); }, spec);
  CHECK_FALSE(r.divergent);
  CHECK(r.value == Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-7));

  auto d = integrate_zero_to_inf([](double x) { return 1.0 / (1.0 + x); }, spec);
  CHECK(d.divergent);
  CHECK(d.regime == DivergenceRegime::far_field);
}

TEST_CASE("zero_to_T splits head and core") {
  QuadratureSpec spec;
  auto r = integrate_zero_to_T([](double x) { return x * x; }, 3.0, spec);
  CHECK(r.value == Approx(9.0).epsilon(1e-10));
  r = integrate_zero_to_T([](double x) { return std::pow(x, -0.5); }, 0.25, spec);
  CHECK(r.value == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("spec validation") {
  QuadratureSpec spec;
  spec.rel_tol = -1.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
}
