#pragma once

// Traces information functionals along a chain's evolution and judges
// their monotonicity; also the continuous-time entropy production rate.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "infomono/convex_q.hpp"
#include "infomono/error.hpp"
#include "infomono/info_measures.hpp"
#include "infomono/markov_core.hpp"

namespace infomono {

struct TracePoint {
  double t;
  double value;
};

class TimeSeries {
 public:
  TimeSeries() = default;

  void push_back(double t, double value) {
    if (!points_.empty() && !(t > points_.back().t)) {
      throw Error(Errc::InvalidValue, "time stamps must be strictly increasing", "t", t);
    }
    points_.push_back({t, value});
  }

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const TracePoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<TracePoint>& points() const noexcept { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<TracePoint> points_;
};

enum class FunctionalKind {
  entropy,             // H(P_t)
  kl_to_stationary,    // D(P_t || P)
  kl_from_stationary,  // D(P || P_t)
  kl_pair,             // D(P_t || P'_t)
  u_functional,        // D_Q(P || P_t) = sum P Q(P_t / P)
  j_functional,        // generalized MI between X_0 and X_t
  v_functional,        // V over an evolved measure family
  circuit_energy,      // 1/2 sum P_t^2 / P
  bhattacharyya,       // sum P^(1-s) P_t^s
};

inline std::string_view to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::entropy: return "entropy";
    case FunctionalKind::kl_to_stationary: return "kl_to_stationary";
    case FunctionalKind::kl_from_stationary: return "kl_from_stationary";
    case FunctionalKind::kl_pair: return "kl_pair";
    case FunctionalKind::u_functional: return "u_functional";
    case FunctionalKind::j_functional: return "j_functional";
    case FunctionalKind::v_functional: return "v_functional";
    case FunctionalKind::circuit_energy: return "circuit_energy";
    case FunctionalKind::bhattacharyya: return "bhattacharyya";
  }
  return "unknown";
}

inline std::optional<FunctionalKind> parse_functional_kind(std::string_view s) {
  for (auto k : {FunctionalKind::entropy, FunctionalKind::kl_to_stationary, FunctionalKind::kl_from_stationary,
                 FunctionalKind::kl_pair, FunctionalKind::u_functional, FunctionalKind::j_functional,
                 FunctionalKind::v_functional, FunctionalKind::circuit_energy, FunctionalKind::bhattacharyya}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

enum class Direction { non_increasing, non_decreasing };

inline std::string_view to_string(Direction d) {
  return d == Direction::non_increasing ? "non_increasing" : "non_decreasing";
}

/// The direction each functional is known to move in.
inline Direction expected_direction(FunctionalKind k) {
  return (k == FunctionalKind::entropy || k == FunctionalKind::bhattacharyya) ? Direction::non_decreasing
                                                                              : Direction::non_increasing;
}

struct TraceInits {
  std::optional<Distribution> p0;
  std::optional<Distribution> p0_prime;
  std::optional<MeasureFamily> family;
};

struct TraceOptions {
  double bhattacharyya_s = 0.5;
  double stationary_tol = kProbabilityTol;
};

namespace detail {

inline const Distribution& need(const std::optional<Distribution>& d, const char* name, FunctionalKind kind) {
  if (!d) throw Error(Errc::MissingInit, std::string(to_string(kind)) + " needs initial distribution " + name, name);
  return *d;
}

inline const ConvexFunction& need_q(const std::optional<ConvexFunction>& q, FunctionalKind kind) {
  if (!q) throw Error(Errc::MissingInit, std::string(to_string(kind)) + " needs a convex function Q", "q");
  return *q;
}

/// Functionals of a single evolving distribution against the stationary law.
inline double marginal_functional(FunctionalKind kind, const std::optional<ConvexFunction>& q,
                                  const Distribution& pt, const std::optional<Distribution>& pi,
                                  const TraceOptions& opts) {
  switch (kind) {
    case FunctionalKind::entropy: return shannon_entropy(pt);
    case FunctionalKind::kl_to_stationary: return kl_divergence(pt, *pi);
    case FunctionalKind::kl_from_stationary: return kl_divergence(*pi, pt);
    case FunctionalKind::u_functional: return f_divergence(need_q(q, kind), *pi, pt);
    case FunctionalKind::circuit_energy: return f_divergence(half_square(), *pi, pt);
    case FunctionalKind::bhattacharyya: return -f_divergence(neg_pow(opts.bhattacharyya_s), *pi, pt);
    default: break;
  }
  throw Error(Errc::BadParams, std::string(to_string(kind)) + " is not a single-distribution functional");
}

inline bool needs_stationary(FunctionalKind k) {
  return k == FunctionalKind::kl_to_stationary || k == FunctionalKind::kl_from_stationary ||
         k == FunctionalKind::u_functional || k == FunctionalKind::circuit_energy ||
         k == FunctionalKind::bhattacharyya;
}

}  // namespace detail

/// Evaluates the functional at t = 0..steps under exact evolution. The
/// j_functional series starts at t = 1: at t = 0 the joint of (X_0, X_0) is
/// diagonal and the functional is undefined under the zero-support rule.
inline TimeSeries trace_functional(FunctionalKind kind, const StochasticMatrix& chain,
                                   const std::optional<ConvexFunction>& q, const TraceInits& inits,
                                   std::size_t steps, const TraceOptions& opts = {}) {
  TimeSeries series;
  switch (kind) {
    case FunctionalKind::kl_pair: {
      const auto a = evolve_distribution(chain, detail::need(inits.p0, "p0", kind), steps);
      const auto b = evolve_distribution(chain, detail::need(inits.p0_prime, "p0_prime", kind), steps);
      for (std::size_t t = 0; t <= steps; ++t) series.push_back(static_cast<double>(t), kl_divergence(a[t], b[t]));
      return series;
    }
    case FunctionalKind::v_functional: {
      if (!inits.family) throw Error(Errc::MissingInit, "v_functional needs a measure family", "family");
      const auto& qq = detail::need_q(q, kind);
      if (qq.arity() != inits.family->k()) {
        throw Error(Errc::ArityMismatch, "Q arity " + std::to_string(qq.arity()) + " differs from family k = " +
                                             std::to_string(inits.family->k()), qq.name());
      }
      const auto fams = evolve_measures(chain, *inits.family, steps);
      for (std::size_t t = 0; t <= steps; ++t) series.push_back(static_cast<double>(t), v_functional(qq, fams[t]));
      return series;
    }
    case FunctionalKind::j_functional: {
      const auto& qq = detail::need_q(q, kind);
      if (qq.arity() != 1) throw Error(Errc::ArityMismatch, "j_functional needs a univariate Q", qq.name());
      const Distribution& p0 = detail::need(inits.p0, "p0", kind);
      detail::require_same_size(chain.size(), p0.size(), "j_functional");
      Eigen::MatrixXd power = chain.matrix();
      const Eigen::MatrixXd weights = p0.row().transpose().asDiagonal();
      for (std::size_t t = 1; t <= steps; ++t) {
        const JointDistribution joint(weights * power, 1e-10);
        series.push_back(static_cast<double>(t), generalized_mi_1973(qq, joint));
        power = power * chain.matrix();
      }
      return series;
    }
    default: break;
  }

  const Distribution& p0 = detail::need(inits.p0, "p0", kind);
  std::optional<Distribution> pi;
  if (detail::needs_stationary(kind)) pi = stationary_distribution(chain, opts.stationary_tol);
  const auto path = evolve_distribution(chain, p0, steps);
  for (std::size_t t = 0; t <= steps; ++t) {
    series.push_back(static_cast<double>(t), detail::marginal_functional(kind, q, path[t], pi, opts));
  }
  return series;
}

/// Continuous-time counterpart for the kinds defined by one or two evolving
/// distributions, sampled on the integrator's time grid.
inline TimeSeries trace_functional(FunctionalKind kind, const RateMatrix& rates,
                                   const std::optional<ConvexFunction>& q, const TraceInits& inits, double dt,
                                   double horizon, const TraceOptions& opts = {}) {
  TimeSeries series;
  if (kind == FunctionalKind::kl_pair) {
    const auto a = integrate_master_equation(rates, detail::need(inits.p0, "p0", kind), dt, horizon);
    const auto b = integrate_master_equation(rates, detail::need(inits.p0_prime, "p0_prime", kind), dt, horizon);
    for (std::size_t i = 0; i < a.size(); ++i) series.push_back(a[i].time, kl_divergence(a[i].dist, b[i].dist));
    return series;
  }
  if (kind == FunctionalKind::j_functional || kind == FunctionalKind::v_functional) {
    throw Error(Errc::BadParams, std::string(to_string(kind)) + " is traced for discrete-time chains only");
  }
  std::optional<Distribution> pi;
  if (detail::needs_stationary(kind)) pi = stationary_distribution(rates, opts.stationary_tol);
  const auto path = integrate_master_equation(rates, detail::need(inits.p0, "p0", kind), dt, horizon);
  for (const auto& td : path) series.push_back(td.time, detail::marginal_functional(kind, q, td.dist, pi, opts));
  return series;
}

inline constexpr double kVerdictTol = 1e-9;

struct MonotonicityVerdict {
  Direction direction = Direction::non_increasing;
  bool holds = true;
  /// Largest step against `direction`, clamped at 0.
  double max_violation = 0.0;
  /// Step index i of the worst pair (i, i+1).
  std::size_t argmax_step = 0;
  /// Smallest step in the allowed direction; positive means strictly monotone.
  double min_drop = 0.0;
};

inline MonotonicityVerdict verdict(const TimeSeries& series, Direction direction, double tol = kVerdictTol) {
  if (series.empty()) throw Error(Errc::EmptySeries, "cannot judge an empty series", "series");
  MonotonicityVerdict v;
  v.direction = direction;
  if (series.size() == 1) return v;
  v.min_drop = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    double against = series[i + 1].value - series[i].value;
    if (direction == Direction::non_decreasing) against = -against;
    const double violation = std::isnan(against) ? std::numeric_limits<double>::infinity() : std::max(0.0, against);
    if (violation > v.max_violation) {
      v.max_violation = violation;
      v.argmax_step = i;
    }
    v.min_drop = std::min(v.min_drop, -against);
  }
  v.holds = v.max_violation <= tol;
  return v;
}

/// dH/dt = 1/2 sum_{x,x'} W_x'x [P(x') - P(x)] [ln P(x') - ln P(x)] for
/// symmetric rates.
inline double h_theorem_rate(const RateMatrix& rates, const Distribution& p) {
  detail::require_same_size(rates.size(), p.size(), "h_theorem_rate");
  const auto& w = rates.matrix();
  const double asym = (w - w.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) throw Error(Errc::NotSymmetric, "rates must satisfy W_xx' = W_x'x", "max |W - W^T|", asym);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!(p[x] > 0.0)) throw Error(Errc::ZeroProbability, "p must be strictly positive", "p[" + std::to_string(x) + "]", p[x]);
  }
  double rate = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (x == y) continue;
      rate += rates(y, x) * (p[y] - p[x]) * (std::log(p[y]) - std::log(p[x]));
    }
  return 0.5 * rate;
}

}  // namespace infomono
