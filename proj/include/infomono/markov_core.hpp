#pragma once

// Finite-state Markov chains in discrete and continuous time: value types,
// stationary analysis, balance diagnostics, and evolution of distributions
// and measure families.
//
// Conventions: a StochasticMatrix row is the conditioning state, so entry
// (x, x') is P(x'|x) and distributions evolve as row vectors, p_{t+1} = p_t P.
// A RateMatrix entry (x, x') is the jump rate W_xx' with W_xx = 0.

#include <cmath>
#include <cstddef>
#include <optional>
#include <algorithm>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "infomono/error.hpp"

namespace infomono {

inline constexpr double kProbabilityTol = 1e-12;

class Distribution {
 public:
  /// Validates non-negativity and unit mass within `tol`.
  explicit Distribution(std::vector<double> probs, double tol = kProbabilityTol)
      : probs_(std::move(probs)) {
    if (probs_.empty()) {
      throw Error(Errc::InvalidValue, "distribution over an empty state space", "probs");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      const double p = probs_[i];
      if (!std::isfinite(p) || p < 0.0) {
        throw Error(Errc::InvalidValue, "negative or non-finite probability at state " + std::to_string(i),
                    "probs[" + std::to_string(i) + "]", p);
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw Error(Errc::InvalidValue, "probabilities do not sum to 1", "sum(probs) - 1", sum - 1.0);
    }
  }

  static Distribution uniform(std::size_t n) {
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  static Distribution delta(std::size_t n, std::size_t state) {
    if (state >= n) {
      throw Error(Errc::DimensionMismatch, "point mass at state " + std::to_string(state) +
                                               " outside a " + std::to_string(n) + "-state space");
    }
    std::vector<double> p(n, 0.0);
    p[state] = 1.0;
    return Distribution(std::move(p));
  }

  /// Builds from an evolved vector: rescales the accumulated rounding drift
  /// away after checking it is below `tol`.
  static Distribution renormalized(const Eigen::RowVectorXd& v, double tol = 1e-9) {
    const double sum = v.sum();
    if (!(std::abs(sum - 1.0) <= tol)) {
      throw Error(Errc::InvalidValue, "evolved mass drifted from 1", "sum - 1", sum - 1.0);
    }
    std::vector<double> p(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) p[static_cast<std::size_t>(i)] = v(i) / sum;
    return Distribution(std::move(p));
  }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  Eigen::RowVectorXd row() const {
    return Eigen::Map<const Eigen::RowVectorXd>(probs_.data(), static_cast<Eigen::Index>(probs_.size()));
  }

  bool strictly_positive() const {
    for (double p : probs_)
      if (!(p > 0.0)) return false;
    return true;
  }

 private:
  std::vector<double> probs_;
};

class StochasticMatrix {
 public:
  explicit StochasticMatrix(Eigen::MatrixXd rows, double tol = kProbabilityTol) : rows_(std::move(rows)) {
    if (rows_.rows() == 0 || rows_.rows() != rows_.cols()) {
      throw Error(Errc::DimensionMismatch, "stochastic matrix must be square and non-empty", "matrix");
    }
    for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
      for (Eigen::Index j = 0; j < rows_.cols(); ++j) {
        const double v = rows_(i, j);
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
          throw Error(Errc::InvalidValue, "transition probability outside [0,1]", entry_name(i, j), v);
        }
      }
      const double s = rows_.row(i).sum();
      if (std::abs(s - 1.0) > tol) {
        throw Error(Errc::InvalidValue, "row " + std::to_string(i) + " does not sum to 1",
                    "rowsum[" + std::to_string(i) + "] - 1", s - 1.0);
      }
    }
  }

  /// Divides each row by its sum. Rows must have positive mass.
  static StochasticMatrix normalized(Eigen::MatrixXd m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double s = m.row(i).sum();
      if (!(s > 0.0)) {
        throw Error(Errc::InvalidValue, "row " + std::to_string(i) + " has no mass", "rowsum", s);
      }
      m.row(i) /= s;
    }
    return StochasticMatrix(std::move(m));
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(rows_.rows()); }
  double operator()(std::size_t from, std::size_t to) const {
    return rows_(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to));
  }
  const Eigen::MatrixXd& matrix() const noexcept { return rows_; }

 private:
  static std::string entry_name(Eigen::Index i, Eigen::Index j) {
    return "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
  }
  Eigen::MatrixXd rows_;
};

class RateMatrix {
 public:
  explicit RateMatrix(Eigen::MatrixXd rates) : rates_(std::move(rates)) {
    if (rates_.rows() == 0 || rates_.rows() != rates_.cols()) {
      throw Error(Errc::DimensionMismatch, "rate matrix must be square and non-empty", "matrix");
    }
    for (Eigen::Index i = 0; i < rates_.rows(); ++i) {
      for (Eigen::Index j = 0; j < rates_.cols(); ++j) {
        const double v = rates_(i, j);
        const std::string name = "rates[" + std::to_string(i) + "][" + std::to_string(j) + "]";
        if (i == j && v != 0.0) throw Error(Errc::InvalidValue, "diagonal rate must be exactly 0", name, v);
        if (!std::isfinite(v) || v < 0.0) throw Error(Errc::InvalidValue, "negative or non-finite rate", name, v);
      }
    }
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(rates_.rows()); }
  double operator()(std::size_t from, std::size_t to) const {
    return rates_(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to));
  }
  const Eigen::MatrixXd& matrix() const noexcept { return rates_; }

  /// Total outflow rate of each state, sum_x' W_xx'.
  Eigen::VectorXd exit_rates() const { return rates_.rowwise().sum(); }

  /// Infinitesimal generator W - diag(exit rates); rows sum to zero.
  Eigen::MatrixXd generator() const {
    Eigen::MatrixXd q = rates_;
    q.diagonal() -= exit_rates();
    return q;
  }

  /// Resistances of the electrical analogue, R_xx' = 1 / (P(x') W_x'x);
  /// +inf where no current can flow.
  Eigen::MatrixXd resistances(const Distribution& pi) const {
    const auto n = rates_.rows();
    Eigen::MatrixXd r = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
    for (Eigen::Index x = 0; x < n; ++x)
      for (Eigen::Index y = 0; y < n; ++y) {
        const double c = pi[static_cast<std::size_t>(y)] * rates_(y, x);
        if (x != y && c > 0.0) r(x, y) = 1.0 / c;
      }
    return r;
  }

 private:
  Eigen::MatrixXd rates_;
};

using Chain = std::variant<StochasticMatrix, RateMatrix>;

inline std::size_t chain_size(const Chain& c) {
  return std::visit([](const auto& m) { return m.size(); }, c);
}

/// Whether a measure family's reference row must be strictly positive
/// (the default) or may vanish on states where the whole family vanishes.
enum class ReferenceSupport { strict, allow_zero };

/// Rows 0..k of `measures` are mu^0..mu^k over n states; row 0 is the
/// reference measure.
class MeasureFamily {
 public:
  explicit MeasureFamily(Eigen::MatrixXd measures, ReferenceSupport support = ReferenceSupport::strict)
      : measures_(std::move(measures)), support_(support) {
    if (measures_.rows() < 1 || measures_.cols() < 1) {
      throw Error(Errc::DimensionMismatch, "measure family needs a reference and at least one state", "measures");
    }
    for (Eigen::Index i = 0; i < measures_.rows(); ++i)
      for (Eigen::Index x = 0; x < measures_.cols(); ++x) {
        const double v = measures_(i, x);
        const std::string name = "mu" + std::to_string(i) + "[" + std::to_string(x) + "]";
        if (!std::isfinite(v) || v < 0.0) throw Error(Errc::InvalidValue, "measure entry must be >= 0", name, v);
        if (i == 0 && support_ == ReferenceSupport::strict && !(v > 0.0)) {
          throw Error(Errc::ZeroProbability, "reference measure must be strictly positive", name, v);
        }
      }
  }

  /// Number of non-reference measures.
  std::size_t k() const noexcept { return static_cast<std::size_t>(measures_.rows() - 1); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(measures_.cols()); }
  const Eigen::MatrixXd& matrix() const noexcept { return measures_; }
  Eigen::RowVectorXd measure(std::size_t i) const { return measures_.row(static_cast<Eigen::Index>(i)); }
  ReferenceSupport support() const noexcept { return support_; }

  /// Total mass sum_x mu^i(x) per measure.
  Eigen::VectorXd masses() const { return measures_.rowwise().sum(); }

 private:
  Eigen::MatrixXd measures_;
  ReferenceSupport support_;
};

struct BalanceReport {
  bool is_doubly_stochastic = false;
  bool satisfies_global_balance = false;
  bool satisfies_detailed_balance = false;
  /// Largest of the global and detailed residuals.
  double max_residual = 0.0;
  double global_residual = 0.0;
  double detailed_residual = 0.0;
};

struct StationaryOptions {
  /// Direct null-space solve at or below this size, power iteration above.
  std::size_t direct_limit = 64;
  std::size_t max_iterations = 1'000'000;
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(Errc::DimensionMismatch,
                std::string(what) + ": sizes " + std::to_string(a) + " and " + std::to_string(b) + " differ", what);
  }
}

/// Strong connectivity of the directed graph with an edge i->j where adj(i,j) > 0.
inline bool strongly_connected(const Eigen::MatrixXd& adj) {
  const auto n = adj.rows();
  auto reach_all = [&](bool transpose) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < n; ++j) {
        const double w = transpose ? adj(j, i) : adj(i, j);
        if (w > 0.0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = 1;
          ++count;
          stack.push_back(j);
        }
      }
    }
    return count == static_cast<std::size_t>(n);
  };
  return reach_all(false) && reach_all(true);
}

/// Solves pi A = 0 with sum(pi) = 1 where `flow` is either I - P or the
/// generator; rejects a null space of dimension > 1.
inline Eigen::VectorXd null_space_solve(const Eigen::MatrixXd& flow) {
  const auto n = flow.rows();
  Eigen::MatrixXd a = flow.transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  if (lu.rank() < n - 1) {
    throw Error(Errc::NonErgodic, "multiple stationary distributions (rank " + std::to_string(lu.rank()) +
                                      " < " + std::to_string(n - 1) + ")",
                "rank");
  }
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  return a.fullPivLu().solve(b);
}

inline Distribution finish_stationary(const Eigen::VectorXd& v) {
  const double sum = v.sum();
  std::vector<double> p(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double pi = v(i) / sum;
    if (!(pi > 0.0)) {
      throw Error(Errc::NonErgodic, "stationary solution is not strictly positive",
                  "pi[" + std::to_string(i) + "]", pi);
    }
    p[static_cast<std::size_t>(i)] = pi;
  }
  return Distribution(std::move(p));
}

/// Power iteration of a kernel with positive diagonal (aperiodic).
inline Eigen::VectorXd power_iterate(const Eigen::MatrixXd& lazy, double tol, std::size_t max_iter,
                                     const std::function<double(const Eigen::RowVectorXd&)>& residual) {
  const auto n = lazy.rows();
  Eigen::RowVectorXd p = Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (std::size_t it = 0; it < max_iter; ++it) {
    p = p * lazy;
    p /= p.sum();
    if (residual(p) <= tol) return p.transpose();
  }
  throw Error(Errc::NonErgodic, "power iteration did not converge within " + std::to_string(max_iter) + " iterations",
              "global balance residual", residual(p));
}

}  // namespace detail

/// max_x |sum_x' pi(x') P(x'->x) - pi(x)|
inline double global_balance_residual(const StochasticMatrix& chain, const Distribution& pi) {
  detail::require_same_size(chain.size(), pi.size(), "global balance");
  const Eigen::RowVectorXd p = pi.row();
  return (p * chain.matrix() - p).cwiseAbs().maxCoeff();
}

/// max_x |sum_x' [pi(x') W_x'x - pi(x) W_xx']|
inline double global_balance_residual(const RateMatrix& rates, const Distribution& pi) {
  detail::require_same_size(rates.size(), pi.size(), "global balance");
  return (pi.row() * rates.generator()).cwiseAbs().maxCoeff();
}

inline double global_balance_residual(const Chain& chain, const Distribution& pi) {
  return std::visit([&](const auto& c) { return global_balance_residual(c, pi); }, chain);
}

inline Distribution stationary_distribution(const StochasticMatrix& chain, double tol = kProbabilityTol,
                                            const StationaryOptions& opts = {}) {
  const auto& p = chain.matrix();
  if (!detail::strongly_connected(p)) {
    throw Error(Errc::NonErgodic, "transition graph is not strongly connected (reducible chain)", "reachability");
  }
  const auto n = p.rows();
  Eigen::VectorXd v;
  if (static_cast<std::size_t>(n) <= opts.direct_limit) {
    v = detail::null_space_solve(Eigen::MatrixXd::Identity(n, n) - p);
  } else {
    const Eigen::MatrixXd lazy = 0.5 * (Eigen::MatrixXd::Identity(n, n) + p);
    v = detail::power_iterate(lazy, tol, opts.max_iterations,
                              [&](const Eigen::RowVectorXd& r) { return (r * p - r).cwiseAbs().maxCoeff(); });
  }
  Distribution pi = detail::finish_stationary(v);
  const double res = global_balance_residual(chain, pi);
  if (res > tol) throw Error(Errc::NonErgodic, "stationary solve missed tolerance", "global balance residual", res);
  return pi;
}

inline Distribution stationary_distribution(const RateMatrix& rates, double tol = kProbabilityTol,
                                            const StationaryOptions& opts = {}) {
  if (!detail::strongly_connected(rates.matrix())) {
    throw Error(Errc::NonErgodic, "rate graph is not strongly connected (reducible chain)", "reachability");
  }
  const auto n = rates.matrix().rows();
  const Eigen::MatrixXd q = rates.generator();
  Eigen::VectorXd v;
  if (static_cast<std::size_t>(n) <= opts.direct_limit) {
    v = detail::null_space_solve(-q);
  } else {
    // Uniformization with slack so every state keeps a self-loop.
    const double lambda = 1.05 * rates.exit_rates().maxCoeff();
    const Eigen::MatrixXd lazy = Eigen::MatrixXd::Identity(n, n) + q / lambda;
    v = detail::power_iterate(lazy, tol, opts.max_iterations,
                              [&](const Eigen::RowVectorXd& r) { return (r * q).cwiseAbs().maxCoeff(); });
  }
  Distribution pi = detail::finish_stationary(v);
  const double res = global_balance_residual(rates, pi);
  if (res > tol) throw Error(Errc::NonErgodic, "stationary solve missed tolerance", "global balance residual", res);
  return pi;
}

inline Distribution stationary_distribution(const Chain& chain, double tol = kProbabilityTol,
                                            const StationaryOptions& opts = {}) {
  return std::visit([&](const auto& c) { return stationary_distribution(c, tol, opts); }, chain);
}

/// Element t is init after t applications of the kernel; steps + 1 elements.
inline std::vector<Distribution> evolve_distribution(const StochasticMatrix& chain, const Distribution& init,
                                                     std::size_t steps) {
  detail::require_same_size(chain.size(), init.size(), "evolve_distribution");
  std::vector<Distribution> out;
  out.reserve(steps + 1);
  out.push_back(init);
  Eigen::RowVectorXd p = init.row();
  for (std::size_t t = 0; t < steps; ++t) {
    p = p * chain.matrix();
    out.push_back(Distribution::renormalized(p));
    p = out.back().row();
  }
  return out;
}

/// mu_{t+1}^i(x) = sum_x' mu_t^i(x') P(x|x') for every i independently.
inline std::vector<MeasureFamily> evolve_measures(const StochasticMatrix& chain, const MeasureFamily& family,
                                                  std::size_t steps) {
  detail::require_same_size(chain.size(), family.size(), "evolve_measures");
  std::vector<MeasureFamily> out;
  out.reserve(steps + 1);
  out.push_back(family);
  for (std::size_t t = 0; t < steps; ++t) {
    out.push_back(MeasureFamily(out.back().matrix() * chain.matrix(), family.support()));
  }
  return out;
}

struct TimedDistribution {
  double time;
  Distribution dist;
};

/// Classical RK4 on dP/dt = P Q (Q the generator). Output at t = 0, dt, 2dt,
/// ..., horizon; the last step is shortened when horizon is not a multiple
/// of dt.
inline std::vector<TimedDistribution> integrate_master_equation(const RateMatrix& rates, const Distribution& init,
                                                                double dt, double horizon) {
  detail::require_same_size(rates.size(), init.size(), "integrate_master_equation");
  if (!(dt > 0.0) || !(horizon >= dt)) {
    throw Error(Errc::BadParams, "need dt > 0 and horizon >= dt", "dt", dt);
  }
  const double guard = rates.exit_rates().maxCoeff() * dt;
  if (!(guard < 1.0)) {
    throw Error(Errc::UnstableStep, "max exit rate * dt must be < 1", "max_x sum_x' W_xx' * dt", guard);
  }
  const Eigen::MatrixXd q = rates.generator();
  auto rhs = [&](const Eigen::RowVectorXd& p) -> Eigen::RowVectorXd { return p * q; };

  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  std::vector<TimedDistribution> out;
  out.reserve(steps + 1);
  out.push_back({0.0, init});
  Eigen::RowVectorXd p = init.row();
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t_prev = static_cast<double>(i - 1) * dt;
    const double t = (i == steps) ? horizon : static_cast<double>(i) * dt;
    const double h = t - t_prev;
    const Eigen::RowVectorXd k1 = rhs(p);
    const Eigen::RowVectorXd k2 = rhs(p + 0.5 * h * k1);
    const Eigen::RowVectorXd k3 = rhs(p + 0.5 * h * k2);
    const Eigen::RowVectorXd k4 = rhs(p + h * k3);
    p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    std::vector<double> probs(static_cast<std::size_t>(p.size()));
    for (Eigen::Index x = 0; x < p.size(); ++x) {
      double v = p(x);
      if (v < 0.0) {
        if (v < -1e-12) throw Error(Errc::UnstableStep, "integrator produced a negative probability", "P_t(x)", v);
        v = 0.0;
        p(x) = 0.0;
      }
      probs[static_cast<std::size_t>(x)] = v;
    }
    out.push_back({t, Distribution(std::move(probs), 1e-9)});
  }
  return out;
}

inline BalanceReport check_balance(const StochasticMatrix& chain, const Distribution& pi, double tol) {
  detail::require_same_size(chain.size(), pi.size(), "check_balance");
  const auto& m = chain.matrix();
  const auto n = m.rows();
  BalanceReport r;
  r.is_doubly_stochastic = (m.colwise().sum().array() - 1.0).abs().maxCoeff() <= tol;
  r.global_residual = global_balance_residual(chain, pi);
  double detailed = 0.0;
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = x + 1; y < n; ++y) {
      const double flux = pi[static_cast<std::size_t>(x)] * m(x, y) - pi[static_cast<std::size_t>(y)] * m(y, x);
      detailed = std::max(detailed, std::abs(flux));
    }
  r.detailed_residual = detailed;
  r.max_residual = std::max(r.global_residual, r.detailed_residual);
  r.satisfies_global_balance = r.global_residual <= tol;
  r.satisfies_detailed_balance = r.satisfies_global_balance && r.detailed_residual <= tol;
  return r;
}

inline BalanceReport check_balance(const RateMatrix& rates, const Distribution& pi, double tol) {
  detail::require_same_size(rates.size(), pi.size(), "check_balance");
  const auto& w = rates.matrix();
  const auto n = w.rows();
  BalanceReport r;
  r.global_residual = global_balance_residual(rates, pi);
  double detailed = 0.0;
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = x + 1; y < n; ++y) {
      const double flux = pi[static_cast<std::size_t>(x)] * w(x, y) - pi[static_cast<std::size_t>(y)] * w(y, x);
      detailed = std::max(detailed, std::abs(flux));
    }
  r.detailed_residual = detailed;
  r.max_residual = std::max(r.global_residual, r.detailed_residual);
  r.satisfies_global_balance = r.global_residual <= tol;
  r.satisfies_detailed_balance = r.satisfies_global_balance && r.detailed_residual <= tol;
  return r;
}

inline BalanceReport check_balance(const Chain& chain, const Distribution& pi, double tol) {
  return std::visit([&](const auto& c) { return check_balance(c, pi, tol); }, chain);
}

/// Time-reversed kernel: row x' holds P~(x|x') = pi(x) P(x'|x) / pi(x').
inline StochasticMatrix backward_matrix(const StochasticMatrix& chain, const Distribution& pi) {
  detail::require_same_size(chain.size(), pi.size(), "backward_matrix");
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (!(pi[i] > 0.0)) throw Error(Errc::ZeroProbability, "pi must be strictly positive", "pi[" + std::to_string(i) + "]", pi[i]);
  }
  const double res = global_balance_residual(chain, pi);
  if (res > 1e-9) throw Error(Errc::NotStationary, "pi is not stationary for the chain", "global balance residual", res);
  const auto n = static_cast<Eigen::Index>(chain.size());
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index to = 0; to < n; ++to)
    for (Eigen::Index from = 0; from < n; ++from)
      b(to, from) = pi[static_cast<std::size_t>(from)] * chain.matrix()(from, to) / pi[static_cast<std::size_t>(to)];
  return StochasticMatrix::normalized(std::move(b));
}

enum class ChainKind { mod_k_walk, mm1_truncated, cyclic, custom };

struct ChainParams {
  int K = 0;            // mod_k_walk, cyclic
  double lambda = 0.0;  // mm1_truncated arrival rate
  double mu = 0.0;      // mm1_truncated service rate
  int N = 0;            // mm1_truncated number of states
  // custom
  std::optional<Eigen::MatrixXd> matrix;
  bool continuous = false;
};

inline Chain build_example_chain(ChainKind kind, const ChainParams& params) {
  switch (kind) {
    case ChainKind::mod_k_walk: {
      if (params.K < 2) throw Error(Errc::BadParams, "mod-K walk needs K >= 2", "K", params.K);
      const int k = params.K;
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(k, k);
      for (int x = 0; x < k; ++x) {
        p(x, (x + 1) % k) += 0.5;
        p(x, (x + k - 1) % k) += 0.5;
      }
      return StochasticMatrix(std::move(p));
    }
    case ChainKind::cyclic: {
      if (params.K < 2) throw Error(Errc::BadParams, "cyclic chain needs K >= 2", "K", params.K);
      const int k = params.K;
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(k, k);
      for (int x = 0; x < k; ++x) p(x, (x + 1) % k) = 1.0;
      return StochasticMatrix(std::move(p));
    }
    case ChainKind::mm1_truncated: {
      if (!(params.lambda > 0.0) || !(params.mu > params.lambda)) {
        throw Error(Errc::BadParams, "need 0 < lambda < mu", "lambda/mu", params.lambda / params.mu);
      }
      if (params.N < 2) throw Error(Errc::BadParams, "need N >= 2 states", "N", params.N);
      const int n = params.N;
      Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
      for (int x = 0; x + 1 < n; ++x) {
        w(x, x + 1) = params.lambda;
        w(x + 1, x) = params.mu;
      }
      return RateMatrix(std::move(w));
    }
    case ChainKind::custom: {
      if (!params.matrix) throw Error(Errc::BadParams, "custom chain needs a matrix", "matrix");
      if (params.continuous) return RateMatrix(*params.matrix);
      return StochasticMatrix(*params.matrix);
    }
  }
  throw Error(Errc::BadParams, "unknown chain kind");
}

}  // namespace infomono
