#pragma once

// Distortion lower bounds for the K-ary source over a noise-free L-ary
// channel with Q(z) = -sqrt(z) and the free parameter s >= 0 of the
// extended mutual information
//   J = sum P(x)[P(y|x) + s P(y)] Q(P(y) / (P(y|x) + s P(y))).
// Reproduction errors other than v = u + 1 (mod K) are forbidden; that
// constraint is carried by the channel's support, never by infinities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "infomono/error.hpp"

namespace infomono {

class ExampleConfig {
 public:
  /// Requires L < K <= 2L, i.e. theta = K/L in (1, 2].
  ExampleConfig(int K, int L) : K_(K), L_(L) {
    if (L < 1 || !(L < K && K <= 2 * L)) {
      throw Error(Errc::BadParams, "need L < K <= 2L (K=" + std::to_string(K) + ", L=" + std::to_string(L) + ")",
                  "theta", L > 0 ? static_cast<double>(K) / L : 0.0);
    }
  }
  int K() const noexcept { return K_; }
  int L() const noexcept { return L_; }
  double theta() const noexcept { return static_cast<double>(K_) / L_; }

 private:
  int K_;
  int L_;
};

/// Per-letter error probabilities: P(v|u) = 1 - eps_u at v = u and eps_u at
/// v = u + 1 (mod K).
class EpsilonChannel {
 public:
  explicit EpsilonChannel(std::vector<double> eps) : eps_(std::move(eps)) {
    if (eps_.empty()) throw Error(Errc::BadParams, "epsilon channel needs at least one letter", "eps");
    for (std::size_t u = 0; u < eps_.size(); ++u) {
      if (!(eps_[u] >= 0.0 && eps_[u] <= 1.0)) {
        throw Error(Errc::BadParams, "eps_u must lie in [0,1]", "eps[" + std::to_string(u) + "]", eps_[u]);
      }
    }
  }
  static EpsilonChannel uniform(int K, double d) { return EpsilonChannel(std::vector<double>(static_cast<std::size_t>(K), d)); }

  std::size_t size() const noexcept { return eps_.size(); }
  double operator[](std::size_t u) const { return eps_[u]; }
  const std::vector<double>& values() const noexcept { return eps_; }
  /// The expected distortion E d(U, V) under a uniform source.
  double mean() const {
    double s = 0.0;
    for (double e : eps_) s += e;
    return s / static_cast<double>(eps_.size());
  }
  /// P(v|u) with zeros on every forbidden cell.
  std::vector<std::vector<double>> conditional() const {
    const std::size_t k = eps_.size();
    std::vector<std::vector<double>> p(k, std::vector<double>(k, 0.0));
    for (std::size_t u = 0; u < k; ++u) {
      p[u][u] += 1.0 - eps_[u];
      p[u][(u + 1) % k] += eps_[u];
    }
    return p;
  }

 private:
  std::vector<double> eps_;
};

/// R^Q(d) = -(1/K)[sqrt(s + Kd) + sqrt(s + K(1-d))] - (1 - 2/K) sqrt(s).
inline double rq_example(double d, double s, int K) {
  if (!(d >= 0.0 && d <= 1.0)) throw Error(Errc::BadParams, "distortion must lie in [0,1]", "d", d);
  if (!(s >= 0.0)) throw Error(Errc::BadParams, "s must be >= 0", "s", s);
  if (K < 2) throw Error(Errc::BadParams, "need K >= 2", "K", K);
  const double k = K;
  return -(std::sqrt(s + k * d) + std::sqrt(s + k * (1.0 - d))) / k - (1.0 - 2.0 / k) * std::sqrt(s);
}

/// C^Q = -sqrt(s) - 1 / (sqrt(s) + sqrt(s + L)).
inline double cq_example(double s, int L) {
  if (!(s >= 0.0)) throw Error(Errc::BadParams, "s must be >= 0", "s", s);
  if (L < 2) throw Error(Errc::BadParams, "need L >= 2", "L", L);
  return -std::sqrt(s) - 1.0 / (std::sqrt(s) + std::sqrt(s + L));
}

/// psi(s) = (1/K^2)[(K/D + 2 sqrt(s))^2 - 2s - K]^2 - 4s(s+K)/K^2 with
/// D = sqrt(s) + sqrt(s+L), evaluated in the cancellation-free form
///   psi = (1 + (K-2L)/D^2)^2 + 4s (K-2L) / (K D^2).
inline double psi_exact(double s, const ExampleConfig& cfg) {
  if (!(s >= 0.0) || std::isinf(s)) throw Error(Errc::BadParams, "s must be finite and >= 0", "s", s);
  const double k = cfg.K();
  const double l = cfg.L();
  const double d = std::sqrt(s) + std::sqrt(s + l);
  const double d2 = d * d;
  const double c = 1.0 + (k - 2.0 * l) / d2;
  return c * c + 4.0 * s * (k - 2.0 * l) / (k * d2);
}

/// Lower bound psi_0(s) <= psi(s) obtained from sqrt(s+L) <= sqrt(s)(1 + L/(2s)),
/// valid for s >= L/8.
inline double psi_lower(double s, const ExampleConfig& cfg) {
  const double k = cfg.K();
  const double l = cfg.L();
  if (!(s >= l / 8.0) || std::isinf(s)) {
    throw Error(Errc::OutOfValidityRange, "psi_0 is valid for s >= L/8 only", "s - L/8", s - l / 8.0);
  }
  const double a = 4.0 * s + l;
  const double r = (4.0 * s - l) / a;
  const double k2 = k * k;
  const double total = k2 * r * r + 16.0 * k2 * k2 * s * s / (a * a * a * a) - 8.0 * k * l * s / a +
                       16.0 * k2 * s * s / (a * a) + 8.0 * k2 * k * s * (4.0 * s - l) / (a * a * a);
  return total / k2;
}

/// lim_{s -> inf} psi(s) = 2(1 - 1/theta).
inline double psi_limit(const ExampleConfig& cfg) { return 2.0 * (1.0 - 1.0 / cfg.theta()); }

/// Smaller root of 4d(1-d) = psi, clamped to 0 for psi < 0.
inline double distortion_bound(double psi) {
  if (std::isnan(psi)) throw Error(Errc::BadParams, "psi is NaN", "psi", psi);
  if (psi > 1.0 + 1e-12) throw Error(Errc::PsiAboveOne, "4d(1-d) = psi has no real root", "psi - 1", psi - 1.0);
  if (psi <= 0.0) return 0.0;
  return 0.5 - 0.5 * std::sqrt(std::max(0.0, 1.0 - psi));
}

struct GridSpec {
  double start = 1e-3;
  double stop = 1e6;
  std::size_t points = 64;
  bool log_spaced = true;
};

inline std::vector<double> make_grid(const GridSpec& g) {
  if (g.points == 0) throw Error(Errc::BadGrid, "grid needs at least one point", "points");
  if (!(g.start >= 0.0) || !(g.stop >= g.start) || !std::isfinite(g.stop)) {
    throw Error(Errc::BadGrid, "need 0 <= start <= stop < inf", "start", g.start);
  }
  if (g.log_spaced && !(g.start > 0.0)) throw Error(Errc::BadGrid, "log-spaced grid needs start > 0", "start", g.start);
  std::vector<double> s(g.points);
  if (g.points == 1) {
    s[0] = g.start;
    return s;
  }
  const double n = static_cast<double>(g.points - 1);
  for (std::size_t i = 0; i < g.points; ++i) {
    const double f = static_cast<double>(i) / n;
    s[i] = g.log_spaced ? std::exp(std::log(g.start) + f * (std::log(g.stop) - std::log(g.start)))
                        : g.start + f * (g.stop - g.start);
  }
  s.back() = g.stop;
  return s;
}

/// Binary entropy in nats.
inline double binary_entropy(double d) {
  if (d <= 0.0 || d >= 1.0) return 0.0;
  return -d * std::log(d) - (1.0 - d) * std::log1p(-d);
}

inline double binary_entropy_bits(double d) { return binary_entropy(d) / std::log(2.0); }

/// Smaller root d* of h2(d) = ln theta on [0, 1/2] by bisection to 1e-12.
inline double classical_bound(const ExampleConfig& cfg) {
  const double target = std::log(cfg.theta());
  double lo = 0.0;
  double hi = 0.5;
  if (binary_entropy(hi) - target <= 0.0) return hi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// The chained argument that the s -> inf bound beats the classical one:
/// h2(d) >= 4d(1-d) in bits and 2(1 - 1/theta) >= log2(theta).
struct ClassicalComparison {
  double d_classical;
  double d_limit;
  double psi_limit;
  double log2_theta;
  bool psi_limit_dominates_log2_theta;
  bool h2_bits_dominates_quadratic;  // at d_classical
};

inline ClassicalComparison classical_comparison(const ExampleConfig& cfg) {
  ClassicalComparison c{};
  c.d_classical = classical_bound(cfg);
  c.psi_limit = psi_limit(cfg);
  c.d_limit = distortion_bound(c.psi_limit);
  c.log2_theta = std::log2(cfg.theta());
  c.psi_limit_dominates_log2_theta = c.psi_limit >= c.log2_theta - 1e-15;
  c.h2_bits_dominates_quadratic =
      binary_entropy_bits(c.d_classical) >= 4.0 * c.d_classical * (1.0 - c.d_classical) - 1e-15;
  return c;
}

struct BoundReport {
  ExampleConfig config;
  /// Ascending s values; the first is always 0.
  std::vector<double> s_grid;
  std::vector<double> psi_values;
  std::vector<double> d_values;
  /// nullopt when the s -> inf limit is the maximizer.
  std::optional<double> best_s;
  double best_d = 0.0;
  double d_at_zero = 0.0;
  double d_at_limit = 0.0;
  double d_classical = 0.0;
};

/// Evaluates d_s on {0} union the grid and the analytic limit; ties go to
/// the smaller s.
inline BoundReport optimize_s(const ExampleConfig& cfg, const GridSpec& grid = {}) {
  std::vector<double> s = make_grid(grid);
  s.push_back(0.0);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());

  BoundReport r{cfg, s, {}, {}, std::nullopt, 0.0, 0.0, 0.0, 0.0};
  r.psi_values.reserve(s.size());
  r.d_values.reserve(s.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double psi = psi_exact(s[i], cfg);
    r.psi_values.push_back(psi);
    r.d_values.push_back(distortion_bound(psi));
    if (r.d_values[i] > r.d_values[best]) best = i;
  }
  r.d_at_zero = r.d_values.front();
  r.d_at_limit = distortion_bound(psi_limit(cfg));
  r.d_classical = classical_bound(cfg);
  if (r.d_at_limit > r.d_values[best]) {
    r.best_s = std::nullopt;
    r.best_d = r.d_at_limit;
  } else {
    r.best_s = s[best];
    r.best_d = r.d_values[best];
  }
  return r;
}

/// Direct summation of -J^Q(U;V) = sum_{u,v} P(u)P(v) sqrt(s + P(v|u)/P(v))
/// with P(u) = P(v) = 1/K and the epsilon channel.
inline double oracle_jq_uv(const ExampleConfig& cfg, const EpsilonChannel& channel, double s) {
  if (channel.size() != static_cast<std::size_t>(cfg.K())) {
    throw Error(Errc::BadParams, "channel has " + std::to_string(channel.size()) + " letters, K = " +
                                     std::to_string(cfg.K()), "eps");
  }
  if (!(s >= 0.0)) throw Error(Errc::BadParams, "s must be >= 0", "s", s);
  const double pu = 1.0 / cfg.K();
  const double pv = 1.0 / cfg.K();
  const auto cond = channel.conditional();
  double total = 0.0;
  for (const auto& row : cond)
    for (double p : row) total += pu * pv * std::sqrt(s + p / pv);
  return total;
}

}  // namespace infomono
