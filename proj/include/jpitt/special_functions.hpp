#ifndef JPITT_SPECIAL_FUNCTIONS_HPP
#define JPITT_SPECIAL_FUNCTIONS_HPP

/// Analytic primitives of Jacobi harmonic analysis: complex log-Gamma, the
/// Gauss hypergeometric function for non-positive real argument, the Jacobi
/// functions phi_lambda and phi_0, the Harish-Chandra c-function, and the
/// three measures m, m-tilde (time side) and n (frequency side).
///
/// Everything in this header is pure and reentrant; all values are computed
/// from the arguments alone, so concurrent calls are safe.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "jpitt/errors.hpp"

namespace jpitt {

using complex_t = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
// (2*pi)^{-1/2}, the normalization shared by m(t) and n(lambda).
inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438187;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Parameter pair (alpha, beta) with alpha >= beta >= -1/2.
///
/// The boundary alpha = beta = -1/2 is admitted: there the whole calculus
/// collapses to the classical cosine transform and serves as the exact
/// cross-check case.  rho = alpha + beta + 1 is always derived, never stored.
struct JacobiParams {
  double alpha;
  double beta;

  JacobiParams(double alpha_in, double beta_in) : alpha(alpha_in), beta(beta_in) {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
      throw DomainError("JacobiParams: alpha and beta must be finite");
    if (beta < -0.5)
      throw DomainError("JacobiParams: requires beta >= -1/2 (got beta=" + std::to_string(beta) + ")");
    if (alpha < beta)
      throw DomainError("JacobiParams: requires alpha >= beta (got alpha=" + std::to_string(alpha) +
                        ", beta=" + std::to_string(beta) + ")");
  }

  double rho() const { return alpha + beta + 1.0; }
  bool is_cosine_case() const { return alpha == -0.5 && beta == -0.5; }
};

/// Non-negative frequency variable.
struct SpectralPoint {
  double lambda;

  explicit SpectralPoint(double lambda_in) : lambda(lambda_in) {
    if (!std::isfinite(lambda) || lambda < 0.0)
      throw DomainError("SpectralPoint: lambda must be finite and >= 0");
  }
};

/// Knobs for series evaluation.  t_switch is the argument at which
/// jacobi_phi switches from the hypergeometric series to the Harish-Chandra
/// asymptotic representation.
struct EvaluationConfig {
  double series_tol = 1e-14;
  double t_switch = 2.0;
  int max_terms = 10000;

  void validate() const {
    if (!(series_tol > 0.0)) throw DomainError("EvaluationConfig: series_tol must be > 0");
    if (!(t_switch > 0.0)) throw DomainError("EvaluationConfig: t_switch must be > 0");
    if (max_terms < 50) throw DomainError("EvaluationConfig: max_terms must be >= 50");
  }
};

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients.  Relative error below 1e-14
// on the strip exercised by the tests.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,  676.5203681218851,      -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,    12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6,  1.5056327351493116e-7};

inline complex_t ln_gamma_right_half(complex_t z) {
  // valid for Re z >= 0.5
  z -= 1.0;
  complex_t x = kLanczosCoeff[0];
  for (int i = 1; i < 9; ++i) x += kLanczosCoeff[i] / (z + static_cast<double>(i));
  const complex_t t = z + (kLanczosG + 0.5);
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log(sin(pi z)) without overflow for large |Im z|.
inline complex_t log_sin_pi(complex_t z) {
  if (std::abs(z.imag()) < 15.0) return std::log(std::sin(kPi * z));
  const complex_t ipi(0.0, kPi);
  if (z.imag() > 0.0)
    return complex_t(-std::log(2.0), 0.5 * kPi) - ipi * z + std::log(1.0 - std::exp(2.0 * ipi * z));
  return complex_t(-std::log(2.0), -0.5 * kPi) + ipi * z + std::log(1.0 - std::exp(-2.0 * ipi * z));
}

}  // namespace detail

/// Principal-branch log-Gamma for complex argument.
/// Throws PoleError at (numerically) non-positive integers.
inline complex_t ln_gamma(complex_t z) {
  // a pole trips only when the argument is a non-positive integer to within
  // rounding; nearby-but-nonzero imaginary parts (graded meshes approach the
  // origin geometrically) evaluate through lnGamma(z) ~ -log z
  const double pole_tol = 1e-30;
  if (z.real() < 0.5) {
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z.real() - nearest) < pole_tol && std::abs(z.imag()) < pole_tol)
      throw PoleError("ln_gamma: argument at a non-positive integer pole");
  }
  if (z.real() >= 0.5) return detail::ln_gamma_right_half(z);
  if (z.real() >= -6.5) {
    // shift into the Lanczos half-plane; principal logs keep the branch
    // continuous off the negative real axis
    complex_t shift(0.0);
    while (z.real() < 0.5) {
      shift += std::log(z);
      z += 1.0;
    }
    return detail::ln_gamma_right_half(z) - shift;
  }
  // reflection for deep left half-plane
  return std::log(complex_t(kPi)) - detail::log_sin_pi(z) - detail::ln_gamma_right_half(1.0 - z);
}

/// Digamma (logarithmic derivative of Gamma) for real positive argument.
inline double digamma(double x) {
  if (!(x > 0.0)) throw PoleError("digamma: requires x > 0");
  double result = 0.0;
  while (x < 16.0) {  // recurrence up to the asymptotic regime
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  // asymptotic series; coefficients are -B_{2n}/(2n)
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12.0 -
                    inv2 * (1.0 / 120.0 -
                            inv2 * (1.0 / 252.0 -
                                    inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
  return result;
}

/// Gauss hypergeometric 2F1(a, b; c; z) for real z <= 0.
///
/// The raw series diverges for |z| > 1, so the argument is first mapped by
/// the Pfaff transformation w = z/(z-1) in [0, 1); a single convergent
/// series then covers the whole half line.  Throws NonConvergenceError when
/// max_terms is reached with terms still above tolerance (this happens as
/// w -> 1, i.e. for very large |z|).
inline complex_t gauss_2f1(complex_t a, complex_t b, complex_t c, double z,
                           const EvaluationConfig& cfg = EvaluationConfig{}) {
  cfg.validate();
  if (!(z <= 0.0)) throw DomainError("gauss_2f1: only z <= 0 is supported");
  const double pole_tol = 1e-12;
  if (std::abs(c.imag()) < pole_tol) {
    const double nearest = std::round(c.real());
    if (nearest <= 0.0 && std::abs(c.real() - nearest) < pole_tol)
      throw PoleError("gauss_2f1: c at a non-positive integer");
  }
  if (z == 0.0) return complex_t(1.0);

  // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
  const double w = z / (z - 1.0);
  const complex_t bp = c - b;
  complex_t term(1.0), sum(1.0);
  int k = 0;
  double tail_ok = 0;  // require two consecutive small terms
  while (k < cfg.max_terms) {
    term *= (a + static_cast<double>(k)) * (bp + static_cast<double>(k)) /
            ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * w;
    sum += term;
    ++k;
    if (std::abs(term) <= cfg.series_tol * std::max(1.0, std::abs(sum))) {
      if (++tail_ok >= 2) break;
    } else {
      tail_ok = 0;
    }
  }
  if (k >= cfg.max_terms)
    throw NonConvergenceError("gauss_2f1: series did not converge within max_terms (w=" + std::to_string(w) + ")");
  const complex_t prefactor = std::exp(-a * std::log1p(-z));
  return prefactor * sum;
}

/// Harish-Chandra c-function,
///   c(lambda) = 2^{rho - i lambda} Gamma(alpha+1) Gamma(i lambda)
///               / ( Gamma((rho + i lambda)/2) Gamma((rho + i lambda)/2 - beta) ).
/// Requires lambda > 0 (Gamma(i lambda) has its pole at 0).
inline complex_t harish_chandra_c(const JacobiParams& p, double lambda) {
  if (!(lambda > 0.0)) throw PoleError("harish_chandra_c: requires lambda > 0");
  const double rho = p.rho();
  const complex_t il(0.0, lambda);
  const complex_t half = 0.5 * (rho + il);
  const complex_t log_c = (rho - il) * std::log(2.0) + ln_gamma(complex_t(p.alpha + 1.0)) + ln_gamma(il) -
                          ln_gamma(half) - ln_gamma(half - p.beta);
  return std::exp(log_c);
}

namespace detail {

// a_m expansion coefficients of (2a+1) coth t + (2b+1) tanh t - 2 rho in
// powers of e^{-2t}.
inline double coth_tanh_coeff(const JacobiParams& p, int m) {
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return 2.0 * ((2.0 * p.alpha + 1.0) + sign * (2.0 * p.beta + 1.0));
}

// the hypergeometric series loses ~e^{lambda t} digits to cancellation; past
// this product the asymptotic representation takes over
inline constexpr double kSeriesCancellationLimit = 15.0;

// order needed for the asymptotic series to reach tol at argument t (the
// expansion coefficients stay bounded, so e^{-2kt} alone sets the order)
inline int asymptotic_order(double t, double tol) {
  const double k = -std::log(tol) / (2.0 * t) + 8.0;
  return std::min(1400, std::max(16, static_cast<int>(k)));
}

// Harish-Chandra series Phi_lambda(t) = e^{(i lambda - rho) t} sum_k Gamma_k e^{-2kt}.
// Gamma_k from the recursion 4k(k - i lambda) Gamma_k =
//   - sum_{m=1..k} a_m (i lambda - rho - 2(k-m)) Gamma_{k-m}.
// Accepts any real lambda != 0; converges for every t > 0 once the order
// covers e^{-2kt}.
struct HarishChandraSeries {
  double rho;
  std::vector<complex_t> gamma_coeff;

  HarishChandraSeries(const JacobiParams& p, double lambda, double tol, int max_order) : rho(p.rho()) {
    const complex_t il(0.0, lambda);
    gamma_coeff.reserve(static_cast<std::size_t>(max_order) + 1);
    gamma_coeff.push_back(complex_t(1.0));
    int small_run = 0;  // alternate coefficients can vanish by parity
    for (int k = 1; k <= max_order; ++k) {
      complex_t s(0.0);
      for (int m = 1; m <= k; ++m)
        s += coth_tanh_coeff(p, m) * (il - rho - 2.0 * static_cast<double>(k - m)) * gamma_coeff[k - m];
      gamma_coeff.push_back(-s / (4.0 * static_cast<double>(k) * (static_cast<double>(k) - il)));
      small_run = (std::abs(gamma_coeff.back()) < tol) ? small_run + 1 : 0;
      if (small_run >= 3 && k >= 8) break;
    }
  }

  // smallest t the built order resolves to the requested tolerance
  double coverage_t(double tol) const {
    return -std::log(tol) / (2.0 * static_cast<double>(gamma_coeff.size()));
  }

  complex_t eval(double lambda, double t) const {
    const complex_t il(0.0, lambda);
    const double q = std::exp(-2.0 * t);
    complex_t s(0.0);
    double qk = 1.0;
    for (const complex_t& g : gamma_coeff) {
      s += g * qk;
      qk *= q;
    }
    return std::exp((il - rho) * t) * s;
  }
};

// Degenerate (lambda = 0) far-field expansion
//   phi_0(t) = e^{-rho t} sum_k (A_k t + B_k) e^{-2kt},
// with A_0 = 2 h(0), B_0 = -2 h(0) (ln 2 + (psi(rho/2)+psi(rho/2-beta))/2 + gamma_E),
// where h(lambda) = c(lambda) / Gamma(i lambda).  In the cosine case h(0) = 0
// and the expansion degenerates to phi_0 = 1.
struct Phi0FarField {
  double rho;
  std::vector<double> A, B;

  explicit Phi0FarField(const JacobiParams& p, int order = 40) : rho(p.rho()) {
    double a0, b0;
    if (rho == 0.0) {
      a0 = 0.0;
      b0 = 1.0;
    } else {
      const double h0 = std::exp(rho * std::log(2.0) + ln_gamma(complex_t(p.alpha + 1.0)).real() -
                                 ln_gamma(complex_t(rho / 2.0)).real() -
                                 ln_gamma(complex_t(rho / 2.0 - p.beta)).real());
      a0 = 2.0 * h0;
      const double d = std::log(2.0) + 0.5 * (digamma(rho / 2.0) + digamma(rho / 2.0 - p.beta));
      b0 = -2.0 * h0 * (d + kEulerGamma);
    }
    A.assign(order + 1, 0.0);
    B.assign(order + 1, 0.0);
    A[0] = a0;
    B[0] = b0;
    auto mu = [this](int j) { return -rho - 2.0 * static_cast<double>(j); };
    for (int k = 1; k <= order; ++k) {
      double sa = 0.0, sb = 0.0;
      for (int m = 1; m <= k; ++m) {
        const double am = coth_tanh_coeff(p, m);
        sa += am * mu(k - m) * A[k - m];
        sb += am * (A[k - m] + mu(k - m) * B[k - m]);
      }
      const double k2 = 4.0 * static_cast<double>(k) * static_cast<double>(k);
      A[k] = -sa / k2;
      B[k] = (4.0 * static_cast<double>(k) * A[k] - sb) / k2;
    }
  }

  double eval(double t) const {
    const double q = std::exp(-2.0 * t);
    double s = 0.0, qk = 1.0;
    for (std::size_t k = 0; k < A.size(); ++k) {
      s += (A[k] * t + B[k]) * qk;
      qk *= q;
    }
    return std::exp(-rho * t) * s;
  }
};

// Series-branch evaluation of phi_lambda(t); accepts lambda of either sign
// (the value depends on lambda only through lambda^2).
inline double phi_series(const JacobiParams& p, double lambda, double t, const EvaluationConfig& cfg) {
  const double rho = p.rho();
  const complex_t a(0.5 * rho, 0.5 * lambda);
  const complex_t b(0.5 * rho, -0.5 * lambda);
  const double sh = std::sinh(t);
  return gauss_2f1(a, b, complex_t(p.alpha + 1.0), -sh * sh, cfg).real();
}

inline double phi_asymptotic(const JacobiParams& p, double lambda, double t, const EvaluationConfig& cfg) {
  const HarishChandraSeries series(p, lambda, cfg.series_tol, asymptotic_order(t, cfg.series_tol));
  const complex_t c = harish_chandra_c(p, lambda);
  const complex_t half = c * series.eval(lambda, t);
  return 2.0 * half.real();  // c(-lambda) Phi_{-lambda} is the conjugate term
}

// branch selection: the series is both accurate and affordable only when
// lambda*t is moderate and t is below the switch point
inline bool series_branch(double lambda, double t, const EvaluationConfig& cfg) {
  return t <= cfg.t_switch && std::abs(lambda) * t <= kSeriesCancellationLimit;
}

}  // namespace detail

/// Jacobi function phi_lambda^{(alpha,beta)}(t), normalized so phi(0) = 1.
///
/// Evaluation runs on the hypergeometric series at z = -sinh^2 t
/// (Pfaff-mapped) while t <= t_switch and lambda t is small enough for the
/// series to hold its digits; elsewhere it uses the Harish-Chandra
/// representation c(lambda) e^{(i lambda - rho)t}(1 + ...) plus the conjugate
/// term, whose coefficient order is chosen from t.  At lambda = 0 beyond the
/// switch point the degenerate phi_0 expansion takes over.
inline double jacobi_phi(const JacobiParams& p, const SpectralPoint& lambda, double t,
                         const EvaluationConfig& cfg = EvaluationConfig{}) {
  cfg.validate();
  if (!(t >= 0.0)) throw DomainError("jacobi_phi: requires t >= 0");
  if (t == 0.0) return 1.0;
  if (detail::series_branch(lambda.lambda, t, cfg)) return detail::phi_series(p, lambda.lambda, t, cfg);
  if (lambda.lambda < 1e-7) {
    const detail::Phi0FarField far(p);
    return far.eval(t);
  }
  return detail::phi_asymptotic(p, lambda.lambda, t, cfg);
}

/// phi_0(t); positive, and comparable with (1+t) e^{-rho t} on the whole
/// half-line.
inline double phi0(const JacobiParams& p, double t, const EvaluationConfig& cfg = EvaluationConfig{}) {
  cfg.validate();
  if (!(t >= 0.0)) throw DomainError("phi0: requires t >= 0");
  if (t == 0.0) return 1.0;
  if (t <= cfg.t_switch) return detail::phi_series(p, 0.0, t, cfg);
  const detail::Phi0FarField far(p);
  return far.eval(t);
}

/// Repeated phi_lambda evaluations at a fixed frequency: the c-function and
/// the asymptotic-series coefficients are hoisted out of the per-t call.
class PhiEvaluator {
 public:
  PhiEvaluator(const JacobiParams& p, double lambda, EvaluationConfig cfg = EvaluationConfig{},
               double t_min_hint = 0.1)
      : params_(p), lambda_(lambda), cfg_(cfg) {
    cfg_.validate();
    if (!(lambda >= 0.0)) throw DomainError("PhiEvaluator: requires lambda >= 0");
    if (lambda < 1e-7) {
      far0_ = std::make_unique<detail::Phi0FarField>(p);
    } else {
      series_ = std::make_unique<detail::HarishChandraSeries>(
          p, lambda, cfg_.series_tol, detail::asymptotic_order(t_min_hint, cfg_.series_tol));
      c_ = harish_chandra_c(p, lambda);
    }
  }

  double operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("PhiEvaluator: requires t >= 0");
    if (t == 0.0) return 1.0;
    if (detail::series_branch(lambda_, t, cfg_)) return detail::phi_series(params_, lambda_, t, cfg_);
    if (far0_) return far0_->eval(t);
    if (t < series_->coverage_t(cfg_.series_tol)) {
      // below the prebuilt order's reach; build the deeper series locally
      const detail::HarishChandraSeries deep(params_, lambda_, cfg_.series_tol,
                                             detail::asymptotic_order(t, cfg_.series_tol));
      return 2.0 * (c_ * deep.eval(lambda_, t)).real();
    }
    return 2.0 * (c_ * series_->eval(lambda_, t)).real();
  }

  double lambda() const { return lambda_; }

 private:
  JacobiParams params_;
  double lambda_;
  EvaluationConfig cfg_;
  std::unique_ptr<detail::HarishChandraSeries> series_;
  std::unique_ptr<detail::Phi0FarField> far0_;
  complex_t c_{0.0, 0.0};
};

/// Repeated phi_0 evaluations with the far-field coefficients precomputed.
class Phi0Evaluator {
 public:
  explicit Phi0Evaluator(const JacobiParams& p, EvaluationConfig cfg = EvaluationConfig{})
      : params_(p), cfg_(cfg), far_(p) {
    cfg_.validate();
  }

  double operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("Phi0Evaluator: requires t >= 0");
    if (t == 0.0) return 1.0;
    if (t <= cfg_.t_switch) return detail::phi_series(params_, 0.0, t, cfg_);
    return far_.eval(t);
  }

 private:
  JacobiParams params_;
  EvaluationConfig cfg_;
  detail::Phi0FarField far_;
};

/// Time-side measure density m(t) = (2 pi)^{-1/2} 2^{2 rho} (sinh t)^{2a+1} (cosh t)^{2b+1}.
inline double measure_m(const JacobiParams& p, double t) {
  if (!(t >= 0.0)) throw DomainError("measure_m: requires t >= 0");
  const double rho = p.rho();
  // pow(0, 0) == 1 covers the cosine boundary alpha = -1/2 at t = 0.
  return kInvSqrt2Pi * std::pow(2.0, 2.0 * rho) * std::pow(std::sinh(t), 2.0 * p.alpha + 1.0) *
         std::pow(std::cosh(t), 2.0 * p.beta + 1.0);
}

/// Modified time-side density m~(t) = phi_0(t)^2 m(t); has polynomial
/// (t^2) growth at infinity instead of the exponential growth of m.
inline double measure_mtilde(const JacobiParams& p, double t, const EvaluationConfig& cfg = EvaluationConfig{}) {
  const double f0 = phi0(p, t, cfg);
  return f0 * f0 * measure_m(p, t);
}

/// Plancherel density n(lambda) = (2 pi)^{-1/2} |c(lambda)|^{-2}.
/// Throws PoleError at lambda = 0 (the density vanishes like lambda^2 but
/// the c-function evaluation degenerates; integrate with graded meshes that
/// avoid 0).
inline double plancherel_density(const JacobiParams& p, double lambda) {
  const complex_t c = harish_chandra_c(p, lambda);  // throws at lambda <= 0
  const double ab = std::abs(c);
  return kInvSqrt2Pi / (ab * ab);
}

}  // namespace jpitt

#endif  // JPITT_SPECIAL_FUNCTIONS_HPP
