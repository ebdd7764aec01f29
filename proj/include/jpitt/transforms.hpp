#ifndef JPITT_TRANSFORMS_HPP
#define JPITT_TRANSFORMS_HPP

/// The four Jacobi transforms (direct, inverse, modified, modified-inverse)
/// by adaptive quadrature, weighted L^p norms against the measures m, m~ and
/// n, the Plancherel defect, and the spectral realization of shifted
/// fractional powers.
///
/// Grid evaluations are assembled strictly in grid order, so results are
/// bit-identical for a fixed QuadratureSpec no matter how callers schedule
/// them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "jpitt/errors.hpp"
#include "jpitt/quadrature.hpp"
#include "jpitt/special_functions.hpp"

namespace jpitt {

using quad::IntegralResult;
using quad::QuadratureSpec;

/// A function tabulated on a strictly increasing grid.
struct SampledFunction {
  enum class Domain { time, frequency };

  std::vector<double> grid;
  std::vector<double> values;
  Domain domain_tag = Domain::time;

  SampledFunction() = default;
  SampledFunction(std::vector<double> g, std::vector<double> v, Domain d)
      : grid(std::move(g)), values(std::move(v)), domain_tag(d) {
    validate();
  }

  void validate() const {
    if (grid.size() != values.size()) throw DomainError("SampledFunction: grid/values length mismatch");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(grid[i]) || !std::isfinite(values[i]))
        throw DomainError("SampledFunction: non-finite entry");
      if (grid[i] < 0.0) throw DomainError("SampledFunction: grid must be >= 0");
      if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("SampledFunction: grid must be strictly increasing");
    }
  }

  double interpolate(double x) const {
    if (grid.empty()) return 0.0;
    if (x <= grid.front()) return values.front();
    if (x >= grid.back()) return values.back();
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid.begin());
    const double w = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return values[i - 1] * (1.0 - w) + values[i] * w;
  }
};

/// A callable on the half-line with declared support or decay envelope.
/// Outside the declared support the function evaluates to zero.
struct AnalyticFunction {
  std::function<double(double)> fn;
  double support_end = std::numeric_limits<double>::infinity();
  double decay_rate = 0.0;     // |f(x)| <= envelope_scale * exp(-decay_rate x)
  double envelope_scale = 1.0;

  double operator()(double x) const { return (x < support_end) ? fn(x) : 0.0; }
  bool compactly_supported() const { return std::isfinite(support_end); }

  static AnalyticFunction zero() {
    return {[](double) { return 0.0; }, 1.0, 0.0, 0.0};
  }
};

namespace detail {

// truncation point where the envelope bound drops below the threshold
inline double envelope_truncation(const AnalyticFunction& f, double growth_rate, double threshold) {
  if (f.compactly_supported()) return f.support_end;
  if (!(f.decay_rate > growth_rate))
    throw EnvelopeError("transform: non-compact input must decay faster than the kernel grows (rate " +
                        std::to_string(growth_rate) + ")");
  double T = 1.0;
  while (T < 400.0) {
    const double bound = f.envelope_scale * (1.0 + T) * std::exp((growth_rate - f.decay_rate) * T);
    if (bound < threshold) return T;
    T += 2.0;
  }
  throw EnvelopeError("transform: envelope never reaches the truncation threshold");
}

}  // namespace detail

/// J f(lambda) = int_0^inf f(t) phi_lambda(t) m(t) dt, with the divergence
/// flag of the underlying quadrature passed through.
inline IntegralResult jacobi_direct_point_result(const AnalyticFunction& f, const JacobiParams& p, double lambda,
                                                 const QuadratureSpec& spec = QuadratureSpec{},
                                                 const EvaluationConfig& cfg = EvaluationConfig{}) {
  const double T = detail::envelope_truncation(f, p.rho() + 1.0, 0.01 * spec.abs_tol);
  const PhiEvaluator phi(p, std::abs(lambda), cfg);
  auto integrand = [&](double t) { return f(t) * phi(t) * measure_m(p, t); };
  return quad::integrate_zero_to_T(integrand, T, spec);
}

inline double jacobi_direct_point(const AnalyticFunction& f, const JacobiParams& p, double lambda,
                                  const QuadratureSpec& spec = QuadratureSpec{},
                                  const EvaluationConfig& cfg = EvaluationConfig{}) {
  auto r = jacobi_direct_point_result(f, p, lambda, spec, cfg);
  if (r.divergent) throw NonConvergenceError("jacobi_direct: divergent time integral");
  return r.value;
}

/// I F(t) = int_0^inf F(lambda) phi_lambda(t) n(lambda) dlambda.
/// The graded mesh near lambda = 0 is mandatory: the density vanishes like
/// lambda^2 and its evaluation degenerates at 0.
inline IntegralResult jacobi_inverse_point_result(const AnalyticFunction& F, const JacobiParams& p, double t,
                                                  const QuadratureSpec& spec = QuadratureSpec{},
                                                  const EvaluationConfig& cfg = EvaluationConfig{}) {
  QuadratureSpec graded = spec;
  graded.graded_origin = true;
  if (F.compactly_supported()) {
    auto integrand = [&](double lambda) {
      return F(lambda) * jacobi_phi(p, SpectralPoint(lambda), t, cfg) * plancherel_density(p, lambda);
    };
    return quad::integrate_zero_to_T(integrand, F.support_end, graded);
  }
  if (!(F.decay_rate > 0.0))
    throw EnvelopeError("jacobi_inverse: non-compact input needs a positive decay rate");
  auto integrand = [&](double lambda) {
    return F(lambda) * jacobi_phi(p, SpectralPoint(lambda), t, cfg) * plancherel_density(p, lambda);
  };
  return quad::integrate_zero_to_inf(integrand, graded);
}

inline double jacobi_inverse_point(const AnalyticFunction& F, const JacobiParams& p, double t,
                                   const QuadratureSpec& spec = QuadratureSpec{},
                                   const EvaluationConfig& cfg = EvaluationConfig{}) {
  auto r = jacobi_inverse_point_result(F, p, t, spec, cfg);
  if (r.divergent) throw NonConvergenceError("jacobi_inverse: divergent frequency integral");
  return r.value;
}

/// J~ f(lambda) = int f(t) (phi_lambda/phi_0)(t) m~(t) dt, evaluated with the
/// modified kernel and measure as defined (not through the standard-transform
/// relation, which the tests check as an identity).
inline IntegralResult jacobi_modified_direct_point_result(const AnalyticFunction& f, const JacobiParams& p,
                                                          double lambda,
                                                          const QuadratureSpec& spec = QuadratureSpec{},
                                                          const EvaluationConfig& cfg = EvaluationConfig{}) {
  const double T = detail::envelope_truncation(f, 1.0, 0.01 * spec.abs_tol);  // m~ grows like t^2
  const PhiEvaluator phi(p, std::abs(lambda), cfg);
  const Phi0Evaluator f0(p, cfg);
  auto integrand = [&](double t) {
    const double base = f0(t);
    return f(t) * (phi(t) / base) * (base * base * measure_m(p, t));
  };
  return quad::integrate_zero_to_T(integrand, T, spec);
}

inline double jacobi_modified_direct_point(const AnalyticFunction& f, const JacobiParams& p, double lambda,
                                           const QuadratureSpec& spec = QuadratureSpec{},
                                           const EvaluationConfig& cfg = EvaluationConfig{}) {
  auto r = jacobi_modified_direct_point_result(f, p, lambda, spec, cfg);
  if (r.divergent) throw NonConvergenceError("jacobi_modified_direct: divergent time integral");
  return r.value;
}

/// I~ F(t) = int F(lambda) (phi_lambda/phi_0)(t) n(lambda) dlambda.
inline IntegralResult jacobi_modified_inverse_point_result(const AnalyticFunction& F, const JacobiParams& p,
                                                           double t,
                                                           const QuadratureSpec& spec = QuadratureSpec{},
                                                           const EvaluationConfig& cfg = EvaluationConfig{}) {
  QuadratureSpec graded = spec;
  graded.graded_origin = true;
  const Phi0Evaluator f0(p, cfg);
  const double base = f0(t);
  auto integrand = [&](double lambda) {
    return F(lambda) * (jacobi_phi(p, SpectralPoint(lambda), t, cfg) / base) * plancherel_density(p, lambda);
  };
  if (F.compactly_supported()) return quad::integrate_zero_to_T(integrand, F.support_end, graded);
  if (!(F.decay_rate > 0.0))
    throw EnvelopeError("jacobi_modified_inverse: non-compact input needs a positive decay rate");
  return quad::integrate_zero_to_inf(integrand, graded);
}

inline double jacobi_modified_inverse_point(const AnalyticFunction& F, const JacobiParams& p, double t,
                                            const QuadratureSpec& spec = QuadratureSpec{},
                                            const EvaluationConfig& cfg = EvaluationConfig{}) {
  auto r = jacobi_modified_inverse_point_result(F, p, t, spec, cfg);
  if (r.divergent) throw NonConvergenceError("jacobi_modified_inverse: divergent frequency integral");
  return r.value;
}

namespace detail {

template <typename PointFn>
SampledFunction sample_over_grid(const std::vector<double>& grid, SampledFunction::Domain domain,
                                 const PointFn& point) {
  SampledFunction out;
  out.domain_tag = domain;
  out.grid = grid;
  out.values.reserve(grid.size());
  for (double x : grid) out.values.push_back(point(x));  // grid order, deterministic
  out.validate();
  return out;
}

}  // namespace detail

inline SampledFunction jacobi_direct(const AnalyticFunction& f, const JacobiParams& p,
                                     const std::vector<double>& lambda_grid,
                                     const QuadratureSpec& spec = QuadratureSpec{},
                                     const EvaluationConfig& cfg = EvaluationConfig{}) {
  return detail::sample_over_grid(lambda_grid, SampledFunction::Domain::frequency,
                                  [&](double l) { return jacobi_direct_point(f, p, l, spec, cfg); });
}

inline SampledFunction jacobi_inverse(const AnalyticFunction& F, const JacobiParams& p,
                                      const std::vector<double>& t_grid,
                                      const QuadratureSpec& spec = QuadratureSpec{},
                                      const EvaluationConfig& cfg = EvaluationConfig{}) {
  return detail::sample_over_grid(t_grid, SampledFunction::Domain::time,
                                  [&](double t) { return jacobi_inverse_point(F, p, t, spec, cfg); });
}

inline SampledFunction jacobi_modified_direct(const AnalyticFunction& f, const JacobiParams& p,
                                              const std::vector<double>& lambda_grid,
                                              const QuadratureSpec& spec = QuadratureSpec{},
                                              const EvaluationConfig& cfg = EvaluationConfig{}) {
  return detail::sample_over_grid(lambda_grid, SampledFunction::Domain::frequency,
                                  [&](double l) { return jacobi_modified_direct_point(f, p, l, spec, cfg); });
}

inline SampledFunction jacobi_modified_inverse(const AnalyticFunction& F, const JacobiParams& p,
                                               const std::vector<double>& t_grid,
                                               const QuadratureSpec& spec = QuadratureSpec{},
                                               const EvaluationConfig& cfg = EvaluationConfig{}) {
  return detail::sample_over_grid(t_grid, SampledFunction::Domain::time,
                                  [&](double t) { return jacobi_modified_inverse_point(F, p, t, spec, cfg); });
}

/// Which reference measure a weighted norm integrates against.
enum class NormMeasure { m, mtilde, n };

/// Result of a weighted-norm evaluation; divergence is reported, not thrown,
/// because the necessity scans consume it as evidence.
struct NormResult {
  double value = 0.0;
  bool divergent = false;
  quad::DivergenceRegime regime = quad::DivergenceRegime::none;
};

namespace detail {

inline std::function<double(double)> measure_density(NormMeasure measure, const JacobiParams& p,
                                                     const EvaluationConfig& cfg) {
  switch (measure) {
    case NormMeasure::m:
      return [p](double t) { return measure_m(p, t); };
    case NormMeasure::mtilde: {
      auto f0 = std::make_shared<Phi0Evaluator>(p, cfg);
      return [p, f0](double t) {
        const double v = (*f0)(t);
        return v * v * measure_m(p, t);
      };
    }
    case NormMeasure::n:
      return [p](double lambda) { return plancherel_density(p, lambda); };
  }
  throw DomainError("measure_density: unknown measure");
}

}  // namespace detail

/// ( int_0^inf |g(x) w(x)|^p dmu(x) )^{1/p}; non-negative and homogeneous of
/// degree 1 in g.  Divergent integrals surface through the result flag.
inline NormResult weighted_norm(const AnalyticFunction& g, double p_exp,
                                const std::function<double(double)>& weight, NormMeasure measure,
                                const JacobiParams& params, const QuadratureSpec& spec = QuadratureSpec{},
                                const EvaluationConfig& cfg = EvaluationConfig{}) {
  if (!(p_exp >= 1.0)) throw DomainError("weighted_norm: requires p >= 1");
  auto dens = detail::measure_density(measure, params, cfg);
  auto integrand = [&](double x) {
    const double gw = g(x) * weight(x);
    return std::pow(std::abs(gw), p_exp) * dens(x);
  };
  IntegralResult r = g.compactly_supported() ? quad::integrate_zero_to_T(integrand, g.support_end, spec)
                                             : quad::integrate_zero_to_inf(integrand, spec);
  NormResult out;
  out.divergent = r.divergent;
  out.regime = r.regime;
  out.value = r.divergent ? std::numeric_limits<double>::infinity() : std::pow(r.value, 1.0 / p_exp);
  return out;
}

inline NormResult weighted_norm(const SampledFunction& g, double p_exp,
                                const std::function<double(double)>& weight, NormMeasure measure,
                                const JacobiParams& params, const QuadratureSpec& spec = QuadratureSpec{},
                                const EvaluationConfig& cfg = EvaluationConfig{}) {
  if (g.grid.empty()) return {};
  AnalyticFunction wrapped{[&g](double x) { return g.interpolate(x); }, g.grid.back(), 0.0, 1.0};
  return weighted_norm(wrapped, p_exp, weight, measure, params, spec, cfg);
}

inline const std::function<double(double)>& unit_weight() {
  static const std::function<double(double)> one = [](double) { return 1.0; };
  return one;
}

/// | ||f||^2_{L2(m)} - ||Jf||^2_{L2(n)} | / ||f||^2_{L2(m)}; zero input gives
/// zero by convention.
inline double plancherel_defect(const AnalyticFunction& f, const JacobiParams& p,
                                const QuadratureSpec& spec = QuadratureSpec{},
                                const EvaluationConfig& cfg = EvaluationConfig{}) {
  // the frequency norm nests a transform per node: keep the outer tolerance
  // two decades above the inner quadrature noise
  const QuadratureSpec inner = spec.scaled_tol(0.1);
  const QuadratureSpec outer = spec.scaled_tol(10.0);
  const NormResult time_norm = weighted_norm(f, 2.0, unit_weight(), NormMeasure::m, p, spec, cfg);
  if (time_norm.divergent) throw NonConvergenceError("plancherel_defect: time norm divergent");
  const double time_sq = time_norm.value * time_norm.value;
  if (time_sq == 0.0) return 0.0;

  AnalyticFunction transform{[&](double lambda) { return jacobi_direct_point(f, p, lambda, inner, cfg); },
                             std::numeric_limits<double>::infinity(), 0.0, 1.0};
  const NormResult freq_norm = weighted_norm(transform, 2.0, unit_weight(), NormMeasure::n, p, outer, cfg);
  if (freq_norm.divergent) throw NonConvergenceError("plancherel_defect: frequency norm divergent");
  const double freq_sq = freq_norm.value * freq_norm.value;
  return std::abs(time_sq - freq_sq) / time_sq;
}

/// g(t) = I[ (lambda^2 + zeta^2)^{sigma/2} J f ](t): the spectral
/// realization of the shifted fractional power.  With sigma = 2 and
/// zeta = rho this is the positive Jacobi Laplacian applied to f.
inline SampledFunction fractional_spectral_apply(const AnalyticFunction& f, const JacobiParams& p, double zeta,
                                                 double sigma, const std::vector<double>& t_grid,
                                                 const QuadratureSpec& spec = QuadratureSpec{},
                                                 const EvaluationConfig& cfg = EvaluationConfig{}) {
  if (!(zeta >= 0.0)) throw DomainError("fractional_spectral_apply: requires zeta >= 0");
  const QuadratureSpec inner = spec.scaled_tol(0.1);
  const QuadratureSpec outer = spec.scaled_tol(10.0);
  auto weighted_transform = [&](double lambda) {
    return std::pow(lambda * lambda + zeta * zeta, 0.5 * sigma) * jacobi_direct_point(f, p, lambda, inner, cfg);
  };
  return detail::sample_over_grid(t_grid, SampledFunction::Domain::time, [&](double t) {
    auto r = quad::integrate_zero_to_inf(
        [&](double lambda) {
          return weighted_transform(lambda) * jacobi_phi(p, SpectralPoint(lambda), t, cfg) *
                 plancherel_density(p, lambda);
        },
        outer);
    if (r.divergent)
      throw NonConvergenceError("fractional_spectral_apply: spectral multiplier destroys integrability");
    return r.value;
  });
}

}  // namespace jpitt

#endif  // JPITT_TRANSFORMS_HPP
