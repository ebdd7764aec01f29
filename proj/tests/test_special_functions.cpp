#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "jpitt/special_functions.hpp"
#include "support/oracles.hpp"

using namespace jpitt;
using Catch::Approx;

TEST_CASE("JacobiParams validates the parameter cone") {
  CHECK_NOTHROW(JacobiParams(1.0, 0.0));
  CHECK_NOTHROW(JacobiParams(-0.5, -0.5));  // cosine boundary
  CHECK_THROWS_AS(JacobiParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(JacobiParams(1.0, -0.6), DomainError);
  CHECK(JacobiParams(1.5, 0.5).rho() == Approx(3.0));
}

TEST_CASE("ln_gamma basic values") {
  CHECK(ln_gamma(complex_t(1.0)).real() == Approx(0.0).margin(1e-14));
  CHECK(ln_gamma(complex_t(1.0)).imag() == Approx(0.0).margin(1e-14));
  CHECK(ln_gamma(complex_t(0.5)).real() == Approx(std::log(std::sqrt(kPi))).epsilon(1e-14));
}

TEST_CASE("ln_gamma matches the 50-digit series oracle at 2+3i") {
  const auto v = ln_gamma(complex_t(2.0, 3.0));
  CHECK(std::abs(v - oracles::kLnGamma2p3i) <= 1e-13 * std::abs(oracles::kLnGamma2p3i));
}

TEST_CASE("ln_gamma satisfies the recurrence and exponentiates to Gamma") {
  // exp(ln_gamma(z+1)) == z exp(ln_gamma(z)) across a strip
  for (double re : {0.3, 1.0, 2.5, 7.0}) {
    for (double im : {0.0, 0.7, 4.0, -2.0}) {
      const complex_t z(re, im);
      const complex_t lhs = std::exp(ln_gamma(z + 1.0));
      const complex_t rhs = z * std::exp(ln_gamma(z));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
  }
  CHECK(std::abs(std::exp(ln_gamma(complex_t(5.0))) - 24.0) < 1e-12 * 24.0);
}

TEST_CASE("ln_gamma pole detection") {
  CHECK_THROWS_AS(ln_gamma(complex_t(0.0)), PoleError);
  CHECK_THROWS_AS(ln_gamma(complex_t(-3.0)), PoleError);
  CHECK_NOTHROW(ln_gamma(complex_t(-2.5)));
}

TEST_CASE("digamma against reflection-forced values") {
  CHECK(digamma(1.0) == Approx(-kEulerGamma).epsilon(1e-13));
  CHECK(digamma(0.5) == Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-13));
  CHECK(digamma(2.0) == Approx(1.0 - kEulerGamma).epsilon(1e-13));
}

TEST_CASE("gauss_2f1 trivial reductions") {
  CHECK(gauss_2f1(complex_t(1.3, 0.2), complex_t(0.4), complex_t(2.0), 0.0).real() == Approx(1.0));

  // a == c reduces to (1-z)^{-b}
  const complex_t b(0.75, 0.0);
  for (double z : {-0.5, -3.0, -40.0}) {
    const complex_t v = gauss_2f1(complex_t(1.5), b, complex_t(1.5), z);
    const complex_t expected = std::exp(-b * std::log1p(-z));
    CHECK(std::abs(v - expected) <= 1e-12 * std::abs(expected));
  }
}

TEST_CASE("gauss_2f1 cosine-reduction instance") {
  // alpha = beta = -1/2: phi-relevant parameters reduce to cos(lambda t)
  const double lambda = 2.0, t = 1.0;
  const double sh = std::sinh(t);
  const complex_t a(0.0, lambda / 2.0), b(0.0, -lambda / 2.0), c(0.5);
  CHECK(gauss_2f1(a, b, c, -sh * sh).real() == Approx(std::cos(lambda * t)).epsilon(1e-12));
}

TEST_CASE("gauss_2f1 rejects bad inputs and flags non-convergence") {
  CHECK_THROWS_AS(gauss_2f1(complex_t(1), complex_t(1), complex_t(-2.0), -1.0), PoleError);
  CHECK_THROWS_AS(gauss_2f1(complex_t(1), complex_t(1), complex_t(1.0), 0.5), DomainError);
  EvaluationConfig tight;
  tight.max_terms = 50;
  const double sh = std::sinh(12.0);  // w extremely close to 1
  CHECK_THROWS_AS(gauss_2f1(complex_t(1.5, 1.0), complex_t(1.5, -1.0), complex_t(2.0), -sh * sh, tight),
                  NonConvergenceError);
}

TEST_CASE("jacobi_phi equals 1 at t = 0 and reduces to cosine at (-1/2,-1/2)") {
  const JacobiParams cosine(-0.5, -0.5);
  CHECK(jacobi_phi(cosine, SpectralPoint(2.7), 0.0) == 1.0);
  CHECK(jacobi_phi(JacobiParams(1.5, 0.5), SpectralPoint(0.0), 0.0) == 1.0);

  for (double lambda : {0.0, 0.5, 2.0, 3.0, 4.9}) {
    for (double t : {0.1, 0.7, 1.9, 2.5, 4.0, 11.0}) {
      CHECK(jacobi_phi(cosine, SpectralPoint(lambda), t) == Approx(std::cos(lambda * t)).margin(1e-12));
    }
  }
}

TEST_CASE("jacobi_phi matches frozen high-precision references") {
  for (const auto& ref : oracles::kPhiReferences) {
    const JacobiParams p(ref.alpha, ref.beta);
    CHECK(jacobi_phi(p, SpectralPoint(ref.lambda), ref.t) == Approx(ref.value).epsilon(1e-11));
  }
}

TEST_CASE("jacobi_phi solves the defining ODE (finite-difference residual)") {
  const JacobiParams p(1.0, 0.0);
  const double lambda = 1.0, t = 2.0;
  auto phi_of_t = [&](double tt) { return jacobi_phi(p, SpectralPoint(lambda), tt); };
  const double v = phi_of_t(t);
  const double res = oracles::jacobi_ode_residual(phi_of_t, p.alpha, p.beta, lambda, t);
  CHECK(std::abs(res) < 1e-5 * (1.0 + std::abs(v)));
}

TEST_CASE("jacobi_phi ODE residual over the (lambda, t) grid") {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.0, 0.0}, {1.5, 0.5}}) {
    const JacobiParams p(a, b);
    for (double lambda : {0.5, 1.7, 3.2, 5.0}) {
      auto phi_of_t = [&](double tt) { return jacobi_phi(p, SpectralPoint(lambda), tt); };
      for (double t : {0.2, 0.9, 1.9, 2.1, 3.5, 8.0}) {
        const double v = phi_of_t(t);
        const double res = oracles::jacobi_ode_residual(phi_of_t, a, b, lambda, t);
        CHECK(std::abs(res) < 1e-5 * (1.0 + std::abs(v)) * (lambda * lambda + p.rho() * p.rho()));
      }
    }
  }
}

TEST_CASE("jacobi_phi series path is even in lambda") {
  const EvaluationConfig cfg;
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.0, 0.0}, {2.3, 0.7}}) {
    const JacobiParams p(a, b);
    for (double lambda : {0.3, 1.1, 4.2}) {
      for (double t : {0.2, 1.0, 1.9}) {
        const double plus = detail::phi_series(p, lambda, t, cfg);
        const double minus = detail::phi_series(p, -lambda, t, cfg);
        CHECK(plus == Approx(minus).margin(1e-12));
      }
    }
  }
}

TEST_CASE("jacobi_phi branch continuity at t_switch") {
  const EvaluationConfig cfg;
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.0, 0.0}, {1.5, 0.5}}) {
    const JacobiParams p(a, b);
    for (double lambda : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      for (double t : {cfg.t_switch - 1.0, cfg.t_switch - 0.5, cfg.t_switch}) {
        const double series = detail::phi_series(p, lambda, t, cfg);
        const double asym = detail::phi_asymptotic(p, lambda, t, cfg);
        const double envelope =
            2.0 * std::abs(harish_chandra_c(p, lambda)) * std::exp(-p.rho() * t);
        const double scale = std::max({std::abs(series), std::abs(asym), envelope});
        CHECK(std::abs(series - asym) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("phi0 values and asymptotic bracket") {
  const JacobiParams p(1.0, 0.0);
  CHECK(phi0(p, 0.0) == 1.0);

  // cosine case: rho = 0 and phi0 is identically 1
  const JacobiParams cosine(-0.5, -0.5);
  for (double t : {0.3, 1.5, 6.0}) CHECK(phi0(cosine, t) == Approx(1.0).margin(1e-12));

  // ratio phi0 / ((1+t) e^{-rho t}) stays in an empirically pinned bracket;
  // brackets measured once at 30-digit precision and asserted stable
  struct Bracket {
    double alpha, beta, lo, hi;
  };
  const Bracket brackets[] = {
      {0.0, 0.0, 0.99, 1.26},
      {1.0, 0.0, 0.99, 7.40},
      {1.5, 0.5, 0.99, 21.8},
      {1.0, 0.5, 0.99, 9.45},
  };
  for (const auto& br : brackets) {
    const JacobiParams q(br.alpha, br.beta);
    for (double t = 0.05; t <= 20.0; t += 0.35) {
      const double ratio = phi0(q, t) / ((1.0 + t) * std::exp(-q.rho() * t));
      CHECK(ratio >= br.lo);
      CHECK(ratio <= br.hi);
    }
  }

  // alpha=1, beta=1/2, t=10: positive and below (1+10) e^{-2.5*10} * c2
  const JacobiParams r(1.0, 0.5);
  const double v = phi0(r, 10.0);
  CHECK(v > 0.0);
  CHECK(v < 11.0 * std::exp(-25.0) * 9.45);
}

TEST_CASE("harish_chandra_c collapses to 1/2 in the cosine case") {
  const JacobiParams cosine(-0.5, -0.5);
  for (double lambda : {0.1, 1.0, 10.0}) {
    const complex_t c = harish_chandra_c(cosine, lambda);
    CHECK(std::abs(c - complex_t(0.5)) < 1e-12);
  }
  CHECK_THROWS_AS(harish_chandra_c(cosine, 0.0), PoleError);
}

TEST_CASE("plancherel density cosine normalization and positivity") {
  const JacobiParams cosine(-0.5, -0.5);
  CHECK(plancherel_density(cosine, 1.7) == Approx(4.0 * kInvSqrt2Pi).epsilon(1e-12));
  CHECK_THROWS_AS(plancherel_density(cosine, 0.0), PoleError);

  const JacobiParams p(1.0, 0.0);
  for (double lambda : {1e-3, 0.1, 1.0, 35.0}) CHECK(plancherel_density(p, lambda) > 0.0);
}

TEST_CASE("plancherel density two-regime slopes") {
  const JacobiParams p(1.0, 0.0);
  std::vector<double> ls_near, ns_near, ls_far, ns_far;
  for (double l = 1e-3; l <= 0.1 * (1 + 1e-12); l *= 1.4678) {
    ls_near.push_back(l);
    ns_near.push_back(plancherel_density(p, l));
  }
  for (double l = 10.0; l <= 1000.0 * (1 + 1e-12); l *= 1.5849) {
    ls_far.push_back(l);
    ns_far.push_back(plancherel_density(p, l));
  }
  CHECK(oracles::loglog_slope(ls_near, ns_near) == Approx(2.0).margin(0.05));
  CHECK(oracles::loglog_slope(ls_far, ns_far) == Approx(2.0 * p.alpha + 1.0).margin(0.05));
}

TEST_CASE("|c(lambda)|^-2 / lambda^(2a+1) stays inside the pinned far bracket") {
  // brackets measured once at 30-digit precision for lambda in [1, 1000]
  struct Bracket {
    double alpha, beta, lo, hi;
  };
  const Bracket brackets[] = {
      {1.0, 0.0, 0.0975, 0.1075},
      {0.0, 0.0, 1.43, 1.58},
      {1.5, 0.5, 0.0068, 0.0140},
  };
  for (const auto& br : brackets) {
    const JacobiParams p(br.alpha, br.beta);
    for (double lambda : {1.0, 3.0, 10.0, 100.0, 1000.0}) {
      const double ratio =
          plancherel_density(p, lambda) / kInvSqrt2Pi / std::pow(lambda, 2.0 * p.alpha + 1.0);
      CHECK(ratio >= br.lo);
      CHECK(ratio <= br.hi);
    }
  }
}

TEST_CASE("measures: positivity, cosine collapse, two-regime m-tilde") {
  const JacobiParams cosine(-0.5, -0.5);
  for (double t : {0.0, 0.5, 3.0, 20.0}) CHECK(measure_m(cosine, t) == Approx(kInvSqrt2Pi).epsilon(1e-13));

  const JacobiParams p(1.0, 0.0);
  CHECK(measure_m(p, 0.0) == 0.0);
  for (double t : {1e-4, 0.1, 1.0, 10.0}) {
    CHECK(measure_m(p, t) > 0.0);
    CHECK(measure_mtilde(p, t) > 0.0);
  }

  // pinned brackets for the sharp two-regime estimate of m-tilde (alpha=1, beta=0)
  for (double t = 2.0; t <= 30.0; t *= 1.3) {
    const double ratio = measure_mtilde(p, t) / (t * t);
    CHECK(ratio >= 11.0);
    CHECK(ratio <= 25.0);
  }
  for (double t = 1e-3; t <= 0.1 * (1 + 1e-12); t *= 2.0) {
    const double ratio = measure_mtilde(p, t) / std::pow(t, 2.0 * p.alpha + 1.0);
    CHECK(ratio >= 6.3);
    CHECK(ratio <= 6.5);
  }
}

TEST_CASE("PhiEvaluator agrees with jacobi_phi across branches") {
  const JacobiParams p(1.5, 0.5);
  for (double lambda : {0.0, 0.4, 3.0}) {
    PhiEvaluator eval(p, lambda);
    for (double t : {0.0, 0.5, 1.99, 2.01, 7.0}) {
      CHECK(eval(t) == Approx(jacobi_phi(p, SpectralPoint(lambda), t)).margin(1e-14));
    }
  }
  Phi0Evaluator e0(p);
  for (double t : {0.0, 0.5, 3.0, 15.0}) CHECK(e0(t) == Approx(phi0(p, t)).margin(1e-14));
}

TEST_CASE("EvaluationConfig validation") {
  EvaluationConfig cfg;
  cfg.max_terms = 10;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = EvaluationConfig{};
  cfg.series_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(SpectralPoint(-1.0), DomainError);
}
