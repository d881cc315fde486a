#pragma once

// Registry of convex functions Q of k variables, the perspective transform
// Q~(v, u) = v * Q(u / v), and a randomized convexity verifier.
//
// Evaluators are defined on the open positive orthant. u_log_u alone is
// extended to u = 0 by continuity; every other builtin raises
// Errc::DomainViolation for arguments <= 0.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infomono/error.hpp"

namespace infomono {

class ConvexFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  ConvexFunction(std::string name, std::size_t arity, Evaluator evaluator, std::string domain_note,
                 std::map<std::string, double> params = {})
      : name_(std::move(name)),
        arity_(arity),
        evaluator_(std::move(evaluator)),
        domain_note_(std::move(domain_note)),
        params_(std::move(params)) {
    if (arity_ < 1) throw Error(Errc::BadParams, "convex function needs arity >= 1", "arity");
    if (!evaluator_) throw Error(Errc::BadParams, "convex function needs an evaluator", name_);
  }

  double operator()(std::span<const double> u) const {
    if (u.size() != arity_) {
      throw Error(Errc::ArityMismatch,
                  name_ + " takes " + std::to_string(arity_) + " arguments, got " + std::to_string(u.size()), name_);
    }
    const double v = evaluator_(u);
    if (!std::isfinite(v)) throw Error(Errc::DomainViolation, name_ + " evaluated to a non-finite value", name_, v);
    return v;
  }

  double operator()(double u) const { return (*this)(std::span<const double>(&u, 1)); }

  const std::string& name() const noexcept { return name_; }
  std::size_t arity() const noexcept { return arity_; }
  const std::string& domain_note() const noexcept { return domain_note_; }
  const std::map<std::string, double>& params() const noexcept { return params_; }

 private:
  std::string name_;
  std::size_t arity_;
  Evaluator evaluator_;
  std::string domain_note_;
  std::map<std::string, double> params_;
};

namespace detail {

inline void require_positive(std::string_view fn, double u) {
  if (!(u > 0.0)) {
    throw Error(Errc::DomainViolation, std::string(fn) + " is defined for u > 0 only", std::string(fn) + "(u)", u);
  }
}

}  // namespace detail

// Univariate builtins.

inline ConvexFunction u_log_u() {
  return ConvexFunction(
      "u_log_u", 1,
      [](std::span<const double> u) {
        if (u[0] == 0.0) return 0.0;
        detail::require_positive("u_log_u", u[0]);
        return u[0] * std::log(u[0]);
      },
      "u >= 0 (0 ln 0 = 0)");
}

inline ConvexFunction neg_log() {
  return ConvexFunction(
      "neg_log", 1,
      [](std::span<const double> u) {
        detail::require_positive("neg_log", u[0]);
        return -std::log(u[0]);
      },
      "u > 0");
}

/// Q(u) = -u^s for s in [0, 1].
inline ConvexFunction neg_pow(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(Errc::BadParams, "neg_pow exponent must lie in [0,1]", "s", s);
  return ConvexFunction(
      "neg_pow", 1,
      [s](std::span<const double> u) {
        detail::require_positive("neg_pow", u[0]);
        return -std::pow(u[0], s);
      },
      "u > 0", {{"s", s}});
}

inline ConvexFunction neg_sqrt() {
  return ConvexFunction(
      "neg_sqrt", 1,
      [](std::span<const double> u) {
        detail::require_positive("neg_sqrt", u[0]);
        return -std::sqrt(u[0]);
      },
      "u > 0");
}

inline ConvexFunction square() {
  return ConvexFunction(
      "square", 1,
      [](std::span<const double> u) {
        detail::require_positive("square", u[0]);
        return u[0] * u[0];
      },
      "u > 0");
}

inline ConvexFunction half_square() {
  return ConvexFunction(
      "half_square", 1,
      [](std::span<const double> u) {
        detail::require_positive("half_square", u[0]);
        return 0.5 * u[0] * u[0];
      },
      "u > 0");
}

/// Linear interpolation through (x_i, y_i) with the end slopes extended past
/// the outer breakpoints. x must be strictly increasing and the slopes
/// non-decreasing.
inline ConvexFunction piecewise_linear(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw Error(Errc::BadParams, "piecewise_linear needs at least two breakpoints", "breakpoints");
  std::vector<double> slopes;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double dx = points[i + 1].first - points[i].first;
    if (!(dx > 0.0)) throw Error(Errc::BadParams, "breakpoints must be strictly increasing", "x", points[i + 1].first);
    slopes.push_back((points[i + 1].second - points[i].second) / dx);
  }
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
    if (slopes[i + 1] < slopes[i] - 1e-12) {
      throw Error(Errc::BadParams, "slopes must be non-decreasing for convexity", "slope drop",
                  slopes[i] - slopes[i + 1]);
    }
  }
  std::map<std::string, double> params;
  for (std::size_t i = 0; i < points.size(); ++i) {
    params["x" + std::to_string(i)] = points[i].first;
    params["y" + std::to_string(i)] = points[i].second;
  }
  return ConvexFunction(
      "piecewise_linear", 1,
      [points = std::move(points), slopes = std::move(slopes)](std::span<const double> u) {
        const double x = u[0];
        detail::require_positive("piecewise_linear", x);
        std::size_t seg = 0;
        while (seg + 1 < slopes.size() && x > points[seg + 1].first) ++seg;
        return points[seg].second + slopes[seg] * (x - points[seg].first);
      },
      "u > 0", std::move(params));
}

// Multivariate builtins.

/// Q(u1, u2) = u1 ln(u1 / u2), jointly convex.
inline ConvexFunction rel_entropy() {
  return ConvexFunction(
      "rel_entropy", 2,
      [](std::span<const double> u) {
        detail::require_positive("rel_entropy", u[0]);
        detail::require_positive("rel_entropy", u[1]);
        return u[0] * std::log(u[0] / u[1]);
      },
      "u1 > 0, u2 > 0");
}

/// Negative geometric mean -(prod u_i)^(1/k).
inline ConvexFunction neg_geomean(std::size_t k) {
  if (k < 1) throw Error(Errc::BadParams, "neg_geomean needs k >= 1", "k");
  return ConvexFunction(
      "neg_geomean", k,
      [k](std::span<const double> u) {
        double log_sum = 0.0;
        for (double x : u) {
          detail::require_positive("neg_geomean", x);
          log_sum += std::log(x);
        }
        return -std::exp(log_sum / static_cast<double>(k));
      },
      "u_i > 0", {{"k", static_cast<double>(k)}});
}

/// sum_i q(u_i) over k arguments.
inline ConvexFunction separable(const ConvexFunction& q, std::size_t k) {
  if (q.arity() != 1) throw Error(Errc::ArityMismatch, "separable lift needs a univariate function", q.name());
  if (k < 1) throw Error(Errc::BadParams, "separable lift needs k >= 1", "k");
  return ConvexFunction(
      "sum_" + q.name(), k,
      [q](std::span<const double> u) {
        double s = 0.0;
        for (double x : u) s += q(x);
        return s;
      },
      q.domain_note(), q.params());
}

/// Q~(v, u_1..u_k) = v * Q(u_1/v, ..., u_k/v), defined for v > 0.
class PerspectiveFunction {
 public:
  explicit PerspectiveFunction(ConvexFunction base) : base_(std::move(base)) {}

  double operator()(double v, std::span<const double> u) const {
    if (!(v > 0.0)) throw Error(Errc::DomainViolation, "perspective needs v > 0", "v", v);
    if (u.size() != base_.arity()) {
      throw Error(Errc::ArityMismatch, "perspective of " + base_.name() + " takes " +
                                           std::to_string(base_.arity() + 1) + " arguments", base_.name());
    }
    std::vector<double> scaled(u.begin(), u.end());
    for (double& x : scaled) x /= v;
    return v * base_(scaled);
  }

  double operator()(double v, double u) const { return (*this)(v, std::span<const double>(&u, 1)); }

  /// args[0] is v.
  double operator()(std::span<const double> args) const {
    if (args.empty()) throw Error(Errc::ArityMismatch, "perspective needs at least the v argument", base_.name());
    return (*this)(args[0], args.subspan(1));
  }

  std::size_t arity() const noexcept { return base_.arity() + 1; }
  const ConvexFunction& base() const noexcept { return base_; }

  ConvexFunction as_convex() const {
    PerspectiveFunction self = *this;
    return ConvexFunction("persp_" + base_.name(), arity(),
                          [self](std::span<const double> a) { return self(a); },
                          "v > 0; " + base_.domain_note(), base_.params());
  }

 private:
  ConvexFunction base_;
};

inline PerspectiveFunction perspective(const ConvexFunction& q) { return PerspectiveFunction(q); }

/// Parses a Q specification string:
///   u_log_u | neg_log | neg_pow:<s> | neg_sqrt | square | half_square
///   | piecewise:x0,y0;x1,y1;...
///   | rel_entropy | neg_geomean:<k> | sum:<k>:<spec> | persp:<spec>
inline ConvexFunction parse_q_spec(std::string_view spec) {
  auto number = [&](std::string_view text) {
    // from_chars for double is available in libstdc++ 11.
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty()) {
      throw Error(Errc::BadParams, "malformed number '" + std::string(text) + "' in Q spec", std::string(spec));
    }
    return v;
  };
  auto count = [&](std::string_view text) {
    const double v = number(text);
    if (!(v >= 1.0) || v != std::floor(v) || v > 64.0) {
      throw Error(Errc::BadParams, "expected a small positive integer in Q spec", std::string(spec), v);
    }
    return static_cast<std::size_t>(v);
  };

  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;
  auto no_arg = [&] {
    if (has_arg) throw Error(Errc::BadParams, "unexpected parameter in Q spec", std::string(spec));
  };

  if (head == "u_log_u") return no_arg(), u_log_u();
  if (head == "neg_log") return no_arg(), neg_log();
  if (head == "neg_sqrt") return no_arg(), neg_sqrt();
  if (head == "square") return no_arg(), square();
  if (head == "half_square") return no_arg(), half_square();
  if (head == "rel_entropy") return no_arg(), rel_entropy();
  if (head == "neg_pow" && has_arg) return neg_pow(number(rest));
  if (head == "neg_geomean" && has_arg) return neg_geomean(count(rest));
  if (head == "persp" && has_arg) return perspective(parse_q_spec(rest)).as_convex();
  if (head == "sum" && has_arg) {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw Error(Errc::BadParams, "sum spec is sum:<k>:<q>", std::string(spec));
    return separable(parse_q_spec(rest.substr(c2 + 1)), count(rest.substr(0, c2)));
  }
  if (head == "piecewise" && has_arg) {
    std::vector<std::pair<double, double>> pts;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto semi = rest.find(';', pos);
      const auto item = rest.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos);
      if (!item.empty()) {
        const auto comma = item.find(',');
        if (comma == std::string_view::npos) {
          throw Error(Errc::BadParams, "piecewise breakpoint must be 'x,y'", std::string(spec));
        }
        pts.emplace_back(number(item.substr(0, comma)), number(item.substr(comma + 1)));
      }
      if (semi == std::string_view::npos) break;
      pos = semi + 1;
    }
    return piecewise_linear(std::move(pts));
  }
  throw Error(Errc::BadParams, "unknown Q spec '" + std::string(spec) + "'", std::string(spec));
}

/// The univariate builtins with representative parameters.
inline std::vector<ConvexFunction> builtin_catalog() {
  return {u_log_u(),   neg_log(),     neg_pow(0.5),
          neg_pow(0.25), neg_sqrt(),  square(),
          half_square(), piecewise_linear({{0.5, 1.0}, {1.0, 0.0}, {2.0, 0.5}, {4.0, 3.0}})};
}

struct Interval {
  double lo;
  double hi;
};

struct ConvexityWitness {
  std::vector<double> a;
  std::vector<double> b;
  double lambda;
  double lhs;  // Q(lambda a + (1 - lambda) b)
  double rhs;  // lambda Q(a) + (1 - lambda) Q(b)
};

struct ConvexityCheck {
  bool pass = true;
  std::optional<ConvexityWitness> witness;
};

inline constexpr double kConvexityTol = 1e-9;

/// Randomized chord test: `trials` draws of (a, b, lambda) from the box;
/// fails on the first draw with Q(lambda a + (1-lambda) b) >
/// lambda Q(a) + (1-lambda) Q(b) + 1e-9.
inline ConvexityCheck verify_convexity(const ConvexFunction& q, const std::vector<Interval>& box, std::size_t trials,
                                       std::uint64_t seed) {
  if (box.size() != q.arity()) {
    throw Error(Errc::ArityMismatch, "sample box has " + std::to_string(box.size()) + " coordinates, " + q.name() +
                                         " takes " + std::to_string(q.arity()), q.name());
  }
  for (const auto& iv : box) {
    if (!(iv.lo > 0.0) || !(iv.hi >= iv.lo)) {
      throw Error(Errc::BadParams, "sample box must lie in the positive orthant", "interval.lo", iv.lo);
    }
  }
  if (trials < 1) throw Error(Errc::BadParams, "need at least one trial", "trials");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = box.size();
  std::vector<double> a(k), b(k), m(k);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = box[i].lo + (box[i].hi - box[i].lo) * unit(rng);
      b[i] = box[i].lo + (box[i].hi - box[i].lo) * unit(rng);
    }
    double lambda = unit(rng);
    if (lambda <= 0.0) lambda = 0.5;
    for (std::size_t i = 0; i < k; ++i) m[i] = lambda * a[i] + (1.0 - lambda) * b[i];
    const double lhs = q(m);
    const double rhs = lambda * q(a) + (1.0 - lambda) * q(b);
    if (lhs > rhs + kConvexityTol) return {false, ConvexityWitness{a, b, lambda, lhs, rhs}};
  }
  return {};
}

inline ConvexityCheck verify_convexity(const PerspectiveFunction& q, const std::vector<Interval>& box,
                                       std::size_t trials, std::uint64_t seed) {
  return verify_convexity(q.as_convex(), box, trials, seed);
}

}  // namespace infomono
