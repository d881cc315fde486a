#pragma once

// Information functionals over finite alphabets: entropy, f-divergence,
// the 1973 generalized mutual information, its lautum swap, the 1975
// multi-measure functional, the V functional over a measure family, the
// linear-combination J functional and its letter-averaged form, and the
// embedding of a Markov triple U -> V -> W into a Markov chain.
//
// All logarithms are natural. Every functional is a reference-weighted sum
//   sum_c ref(c) * Q(mu_1(c)/ref(c), ..., mu_k(c)/ref(c));
// a cell with ref(c) = 0 contributes 0 when every mu_i(c) = 0 and raises
// Errc::SupportMismatch otherwise.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "infomono/convex_q.hpp"
#include "infomono/error.hpp"
#include "infomono/markov_core.hpp"

namespace infomono {

class JointDistribution {
 public:
  explicit JointDistribution(Eigen::MatrixXd table, double tol = kProbabilityTol) : table_(std::move(table)) {
    if (table_.rows() == 0 || table_.cols() == 0) {
      throw Error(Errc::DimensionMismatch, "joint table must be non-empty", "table");
    }
    for (Eigen::Index x = 0; x < table_.rows(); ++x)
      for (Eigen::Index y = 0; y < table_.cols(); ++y) {
        const double v = table_(x, y);
        if (!std::isfinite(v) || v < 0.0) {
          throw Error(Errc::InvalidValue, "joint probability must be >= 0",
                      "table[" + std::to_string(x) + "][" + std::to_string(y) + "]", v);
        }
      }
    const double s = table_.sum();
    if (std::abs(s - 1.0) > tol) throw Error(Errc::InvalidValue, "joint table does not sum to 1", "sum - 1", s - 1.0);
  }

  /// P(x, y) = P(x) P(y|x).
  static JointDistribution from_channel(const Distribution& px, const StochasticMatrix& channel) {
    detail::require_same_size(px.size(), channel.size(), "from_channel");
    Eigen::MatrixXd t = px.row().transpose().asDiagonal() * channel.matrix();
    return JointDistribution(std::move(t), 1e-10);
  }

  std::size_t nx() const noexcept { return static_cast<std::size_t>(table_.rows()); }
  std::size_t ny() const noexcept { return static_cast<std::size_t>(table_.cols()); }
  const Eigen::MatrixXd& table() const noexcept { return table_; }
  double operator()(std::size_t x, std::size_t y) const {
    return table_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  }

  Eigen::VectorXd px() const { return table_.rowwise().sum(); }
  Eigen::RowVectorXd py() const { return table_.colwise().sum(); }
  /// P(x) P(y).
  Eigen::MatrixXd product_of_marginals() const { return px() * py(); }
  /// Row x holds P(y|x); rows with P(x) = 0 are left at zero.
  Eigen::MatrixXd conditional() const {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(table_.rows(), table_.cols());
    const Eigen::VectorXd m = px();
    for (Eigen::Index x = 0; x < table_.rows(); ++x)
      if (m(x) > 0.0) c.row(x) = table_.row(x) / m(x);
    return c;
  }

  /// Joint of (X, Z) for Z drawn from P(z|y).
  JointDistribution push_through(const StochasticMatrix& channel) const {
    detail::require_same_size(ny(), channel.size(), "push_through");
    return JointDistribution(table_ * channel.matrix(), 1e-10);
  }

 private:
  Eigen::MatrixXd table_;
};

/// A non-negative measure mu(x, y), not necessarily normalized.
class PairMeasure {
 public:
  explicit PairMeasure(Eigen::MatrixXd table) : table_(std::move(table)) {
    for (Eigen::Index x = 0; x < table_.rows(); ++x)
      for (Eigen::Index y = 0; y < table_.cols(); ++y) {
        const double v = table_(x, y);
        if (!std::isfinite(v) || v < 0.0) {
          throw Error(Errc::InvalidValue, "pair measure entry must be >= 0",
                      "mu[" + std::to_string(x) + "][" + std::to_string(y) + "]", v);
        }
      }
  }
  const Eigen::MatrixXd& table() const noexcept { return table_; }

 private:
  Eigen::MatrixXd table_;
};

namespace detail {

inline Eigen::ArrayXd flat(const Eigen::MatrixXd& m) { return Eigen::Map<const Eigen::ArrayXd>(m.data(), m.size()); }

inline double reference_sum(const ConvexFunction& q, const Eigen::ArrayXd& ref, const std::vector<Eigen::ArrayXd>& mus,
                            const char* what) {
  if (q.arity() != mus.size()) {
    throw Error(Errc::ArityMismatch, std::string(what) + ": Q " + q.name() + " has arity " +
                                         std::to_string(q.arity()) + " but " + std::to_string(mus.size()) +
                                         " measures were supplied", q.name());
  }
  for (const auto& m : mus) require_same_size(static_cast<std::size_t>(ref.size()), static_cast<std::size_t>(m.size()), what);

  std::vector<double> args(mus.size());
  double total = 0.0;
  for (Eigen::Index c = 0; c < ref.size(); ++c) {
    const double r = ref(c);
    if (r > 0.0) {
      for (std::size_t i = 0; i < mus.size(); ++i) args[i] = mus[i](c) / r;
      try {
        total += r * q(args);
      } catch (const Error& e) {
        if (e.code() != Errc::DomainViolation) throw;
        throw Error(Errc::SupportMismatch, std::string(what) + ": Q argument outside its domain at cell " +
                                               std::to_string(c) + " (" + e.what() + ")",
                    e.quantity(), e.residual());
      }
    } else {
      for (std::size_t i = 0; i < mus.size(); ++i) {
        if (mus[i](c) != 0.0) {
          throw Error(Errc::SupportMismatch, std::string(what) + ": measure " + std::to_string(i + 1) +
                                                 " is positive where the reference vanishes (cell " +
                                                 std::to_string(c) + ")",
                      "mu" + std::to_string(i + 1), mus[i](c));
        }
      }
    }
  }
  return total;
}

inline void require_univariate(const ConvexFunction& q, const char* what) {
  if (q.arity() != 1) {
    throw Error(Errc::ArityMismatch, std::string(what) + " needs a univariate Q, " + q.name() + " has arity " +
                                         std::to_string(q.arity()), q.name());
  }
}

}  // namespace detail

/// -sum p ln p in nats, 0 ln 0 = 0.
inline double shannon_entropy(const Distribution& p) {
  double h = 0.0;
  for (double v : p.probs())
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

/// Classical D(p||q) = sum p ln(p/q) with 0 ln 0 = 0; infinite divergence
/// (q = 0 where p > 0) raises SupportMismatch.
inline double kl_divergence(const Distribution& p, const Distribution& q) {
  detail::require_same_size(p.size(), q.size(), "kl_divergence");
  double d = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    if (!(q[x] > 0.0)) {
      throw Error(Errc::SupportMismatch, "divergence is infinite: q vanishes where p > 0",
                  "q[" + std::to_string(x) + "]", q[x]);
    }
    d += p[x] * std::log(p[x] / q[x]);
  }
  return d;
}

/// D_Q(P1||P2) = sum_x P1(x) Q(P2(x)/P1(x)).
inline double f_divergence(const ConvexFunction& q, const Distribution& p1, const Distribution& p2) {
  detail::require_univariate(q, "f_divergence");
  detail::require_same_size(p1.size(), p2.size(), "f_divergence");
  return detail::reference_sum(q, p1.row().transpose().array(), {p2.row().transpose().array()}, "f_divergence");
}

/// sum_{x,y} P(x,y) Q(P(x)P(y)/P(x,y)).
inline double generalized_mi_1973(const ConvexFunction& q, const JointDistribution& joint) {
  detail::require_univariate(q, "generalized_mi_1973");
  return detail::reference_sum(q, detail::flat(joint.table()), {detail::flat(joint.product_of_marginals())},
                               "generalized_mi_1973");
}

/// sum_{x,y} P(x)P(y) Q(P(x,y)/(P(x)P(y))).
inline double lautum_variant(const ConvexFunction& q, const JointDistribution& joint) {
  detail::require_univariate(q, "lautum_variant");
  return detail::reference_sum(q, detail::flat(joint.product_of_marginals()), {detail::flat(joint.table())},
                               "lautum_variant");
}

/// sum_{x,y} P(x,y) Q(mu_1(x,y)/P(x,y), ..., mu_k(x,y)/P(x,y)).
inline double zz_functional_1975(const ConvexFunction& q, const JointDistribution& joint,
                                 const std::vector<PairMeasure>& measures) {
  std::vector<Eigen::ArrayXd> mus;
  mus.reserve(measures.size());
  for (const auto& m : measures) {
    if (m.table().rows() != joint.table().rows() || m.table().cols() != joint.table().cols()) {
      throw Error(Errc::DimensionMismatch, "pair measure shape differs from the joint", "measure");
    }
    mus.push_back(detail::flat(m.table()));
  }
  return detail::reference_sum(q, detail::flat(joint.table()), mus, "zz_functional_1975");
}

/// V = sum_x mu^0(x) Q(mu^1(x)/mu^0(x), ..., mu^k(x)/mu^0(x)).
inline double v_functional(const ConvexFunction& q, const MeasureFamily& family) {
  const auto& m = family.matrix();
  std::vector<Eigen::ArrayXd> mus;
  for (Eigen::Index i = 1; i < m.rows(); ++i) mus.push_back(m.row(i).transpose().array());
  return detail::reference_sum(q, m.row(0).transpose().array(), mus, "v_functional");
}

/// The same V rewritten against a strictly positive reference P:
/// sum_x P(x) Q~(mu^0(x)/P(x), ..., mu^k(x)/P(x)).
inline double v_functional_via_reference(const ConvexFunction& q, const MeasureFamily& family,
                                         const Distribution& reference) {
  detail::require_same_size(family.size(), reference.size(), "v_functional_via_reference");
  if (q.arity() != family.k()) {
    throw Error(Errc::ArityMismatch, "Q arity differs from the number of measures", q.name());
  }
  const PerspectiveFunction qt = perspective(q);
  const auto& m = family.matrix();
  std::vector<double> u(family.k());
  double total = 0.0;
  for (std::size_t x = 0; x < family.size(); ++x) {
    const double p = reference[x];
    if (!(p > 0.0)) throw Error(Errc::ZeroProbability, "reference must be strictly positive", "P(x)", p);
    const auto xi = static_cast<Eigen::Index>(x);
    for (std::size_t i = 0; i < family.k(); ++i) u[i] = m(static_cast<Eigen::Index>(i + 1), xi) / p;
    total += p * qt(m(0, xi) / p, u);
  }
  return total;
}

/// mu(x, y) = c_0 P(x,y) + sum_i c_i P(x) P(y|x_i), coefficients indexed
/// 0..|X| (index i >= 1 weights letter x_{i-1}).
inline PairMeasure linear_combination_measure(const JointDistribution& joint, const std::vector<double>& coeffs) {
  if (coeffs.size() != joint.nx() + 1) {
    throw Error(Errc::BadCoefficients, "need 1 + |X| = " + std::to_string(joint.nx() + 1) + " coefficients, got " +
                                           std::to_string(coeffs.size()), "coefficients");
  }
  const Eigen::VectorXd px = joint.px();
  const Eigen::MatrixXd cond = joint.conditional();
  Eigen::RowVectorXd mix = Eigen::RowVectorXd::Zero(joint.table().cols());
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    const auto xi = static_cast<Eigen::Index>(i - 1);
    if (!(px(xi) > 0.0)) {
      throw Error(Errc::SupportMismatch, "P(y|x_i) undefined for a letter with P(x_i) = 0",
                  "P(x_" + std::to_string(i - 1) + ")", px(xi));
    }
    mix += coeffs[i] * cond.row(xi);
  }
  Eigen::MatrixXd mu = coeffs[0] * joint.table() + px * mix;
  // Signed coefficients may leave round-off below zero.
  for (Eigen::Index c = 0; c < mu.size(); ++c) {
    if (mu.data()[c] < 0.0 && mu.data()[c] > -1e-15) mu.data()[c] = 0.0;
  }
  return PairMeasure(std::move(mu));
}

namespace detail {

inline void check_denominator_weights(const std::vector<double>& s) {
  bool any_positive = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] >= 0.0)) {
      throw Error(Errc::BadCoefficients, "denominator weights must be >= 0", "s[" + std::to_string(i) + "]", s[i]);
    }
    any_positive = any_positive || s[i] > 0.0;
  }
  if (!any_positive) throw Error(Errc::BadCoefficients, "at least one denominator weight must be > 0", "s");
}

}  // namespace detail

/// sum_{x,y} mu_0(x,y) Q(mu_1(x,y)/mu_0(x,y)) with mu_0, mu_1 the linear
/// combinations weighted by s and t.
inline double j_linear_combination(const ConvexFunction& q, const JointDistribution& joint,
                                   const std::vector<double>& s_coeffs, const std::vector<double>& t_coeffs) {
  detail::require_univariate(q, "j_linear_combination");
  detail::check_denominator_weights(s_coeffs);
  const PairMeasure mu0 = linear_combination_measure(joint, s_coeffs);
  const PairMeasure mu1 = linear_combination_measure(joint, t_coeffs);
  return detail::reference_sum(q, detail::flat(mu0.table()), {detail::flat(mu1.table())}, "j_linear_combination");
}

/// Coefficients giving mu_0 = P(x,y) + s P(x)P(y) and mu_1 = P(x)P(y).
inline std::pair<std::vector<double>, std::vector<double>> simplextension_coefficients(const JointDistribution& joint,
                                                                                       double s) {
  if (!(s >= 0.0)) throw Error(Errc::BadCoefficients, "extension parameter s must be >= 0", "s", s);
  const Eigen::VectorXd px = joint.px();
  std::vector<double> sc(joint.nx() + 1), tc(joint.nx() + 1);
  sc[0] = 1.0;
  tc[0] = 0.0;
  for (std::size_t i = 0; i < joint.nx(); ++i) {
    sc[i + 1] = s * px(static_cast<Eigen::Index>(i));
    tc[i + 1] = px(static_cast<Eigen::Index>(i));
  }
  return {sc, tc};
}

/// sum_{x,y} P(x)[P(y|x) + s P(y)] Q(P(y) / (P(y|x) + s P(y))).
inline double j_simplextension(const ConvexFunction& q, const JointDistribution& joint, double s) {
  const auto [sc, tc] = simplextension_coefficients(joint, s);
  return j_linear_combination(q, joint, sc, tc);
}

inline constexpr std::size_t kMaxRandomLetters = 3;

/// Expectation of the J functional over m i.i.d. letters X_1..X_m ~ P(x),
/// by exact enumeration of all |X|^m tuples. Coefficient vectors have
/// length 1 + m: index 0 weights P(y|x), index i weights P(y|X_i).
inline double expected_j_functional(const ConvexFunction& q, const JointDistribution& joint,
                                    const std::vector<double>& s_coeffs, const std::vector<double>& t_coeffs,
                                    std::size_t m) {
  detail::require_univariate(q, "expected_j_functional");
  if (m > kMaxRandomLetters) {
    throw Error(Errc::TooManyLetters, "exact enumeration is limited to m <= 3", "m", static_cast<double>(m));
  }
  if (s_coeffs.size() != m + 1 || t_coeffs.size() != m + 1) {
    throw Error(Errc::BadCoefficients, "coefficient vectors must have length 1 + m", "coefficients");
  }
  detail::check_denominator_weights(s_coeffs);

  const auto nx = static_cast<Eigen::Index>(joint.nx());
  const Eigen::VectorXd px = joint.px();
  const Eigen::MatrixXd cond = joint.conditional();
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < m; ++i) tuples *= joint.nx();

  std::vector<Eigen::Index> letters(m);
  double expectation = 0.0;
  for (std::size_t code = 0; code < tuples; ++code) {
    std::size_t c = code;
    double weight = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      letters[i] = static_cast<Eigen::Index>(c % joint.nx());
      c /= joint.nx();
      weight *= px(letters[i]);
    }
    if (weight == 0.0) continue;
    Eigen::RowVectorXd mix_s = Eigen::RowVectorXd::Zero(cond.cols());
    Eigen::RowVectorXd mix_t = Eigen::RowVectorXd::Zero(cond.cols());
    for (std::size_t i = 0; i < m; ++i) {
      mix_s += s_coeffs[i + 1] * cond.row(letters[i]);
      mix_t += t_coeffs[i + 1] * cond.row(letters[i]);
    }
    Eigen::MatrixXd mu0(nx, cond.cols()), mu1(nx, cond.cols());
    for (Eigen::Index x = 0; x < nx; ++x) {
      mu0.row(x) = px(x) * (s_coeffs[0] * cond.row(x) + mix_s);
      mu1.row(x) = px(x) * (t_coeffs[0] * cond.row(x) + mix_t);
    }
    expectation += weight * detail::reference_sum(q, detail::flat(mu0), {detail::flat(mu1)}, "expected_j_functional");
  }
  return expectation;
}

/// P(u, v, w) over finite alphabets, stored with w fastest.
class TripleDistribution {
 public:
  TripleDistribution(std::size_t nu, std::size_t nv, std::size_t nw, std::vector<double> data)
      : nu_(nu), nv_(nv), nw_(nw), data_(std::move(data)) {
    if (nu_ == 0 || nv_ == 0 || nw_ == 0 || data_.size() != nu_ * nv_ * nw_) {
      throw Error(Errc::DimensionMismatch, "triple table size must equal |U||V||W|", "data");
    }
    double s = 0.0;
    for (double v : data_) {
      if (!std::isfinite(v) || v < 0.0) throw Error(Errc::InvalidValue, "triple probability must be >= 0", "P(u,v,w)", v);
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-10) throw Error(Errc::InvalidValue, "triple table does not sum to 1", "sum - 1", s - 1.0);
  }

  /// P(u) P(v|u) P(w|v).
  static TripleDistribution from_markov(const Distribution& pu, const StochasticMatrix& pv_given_u,
                                        const Eigen::MatrixXd& pw_given_v) {
    const std::size_t nu = pu.size();
    const auto nv = static_cast<std::size_t>(pv_given_u.matrix().cols());
    const auto nw = static_cast<std::size_t>(pw_given_v.cols());
    if (pv_given_u.size() != nu || static_cast<std::size_t>(pw_given_v.rows()) != nv) {
      throw Error(Errc::DimensionMismatch, "channel shapes do not chain", "channels");
    }
    std::vector<double> d(nu * nv * nw);
    for (std::size_t u = 0; u < nu; ++u)
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t w = 0; w < nw; ++w)
          d[(u * nv + v) * nw + w] = pu[u] * pv_given_u(u, v) *
                                     pw_given_v(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w));
    return TripleDistribution(nu, nv, nw, std::move(d));
  }

  std::size_t nu() const noexcept { return nu_; }
  std::size_t nv() const noexcept { return nv_; }
  std::size_t nw() const noexcept { return nw_; }
  double operator()(std::size_t u, std::size_t v, std::size_t w) const { return data_[(u * nv_ + v) * nw_ + w]; }

  Eigen::MatrixXd uv() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nu_), static_cast<Eigen::Index>(nv_));
    for (std::size_t u = 0; u < nu_; ++u)
      for (std::size_t v = 0; v < nv_; ++v)
        for (std::size_t w = 0; w < nw_; ++w) m(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) += (*this)(u, v, w);
    return m;
  }
  Eigen::MatrixXd uw() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nu_), static_cast<Eigen::Index>(nw_));
    for (std::size_t u = 0; u < nu_; ++u)
      for (std::size_t v = 0; v < nv_; ++v)
        for (std::size_t w = 0; w < nw_; ++w) m(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(w)) += (*this)(u, v, w);
    return m;
  }
  Eigen::MatrixXd vw() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nv_), static_cast<Eigen::Index>(nw_));
    for (std::size_t u = 0; u < nu_; ++u)
      for (std::size_t v = 0; v < nv_; ++v)
        for (std::size_t w = 0; w < nw_; ++w) m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) += (*this)(u, v, w);
    return m;
  }

 private:
  std::size_t nu_, nv_, nw_;
  std::vector<double> data_;
};

/// States are pairs (u, a) with a in {0..width-1}, width = max(|V|, |W|),
/// indexed u * width + a. The kernel moves (u, v) to (u, w) with P(w|v);
/// padded or zero-probability letters self-loop.
struct TripleEmbedding {
  StochasticMatrix kernel;
  MeasureFamily at_t;   // mu^0 = P(u,v), mu^1 = P(u)P(v)
  MeasureFamily at_t1;  // mu^0 = P(u,w), mu^1 = P(u)P(w)
  std::size_t nu;
  std::size_t width;

  std::size_t state(std::size_t u, std::size_t letter) const { return u * width + letter; }
};

inline TripleEmbedding embed_triple_as_chain(const TripleDistribution& p, double markov_tol = 1e-9) {
  const Eigen::MatrixXd puv = p.uv();
  const Eigen::MatrixXd puw = p.uw();
  const Eigen::MatrixXd pvw = p.vw();
  const Eigen::VectorXd pu = puv.rowwise().sum();
  const Eigen::VectorXd pv = pvw.rowwise().sum();
  const Eigen::RowVectorXd pw = pvw.colwise().sum();

  double worst = 0.0;
  for (std::size_t u = 0; u < p.nu(); ++u)
    for (std::size_t v = 0; v < p.nv(); ++v)
      for (std::size_t w = 0; w < p.nw(); ++w) {
        const auto ui = static_cast<Eigen::Index>(u), vi = static_cast<Eigen::Index>(v),
                   wi = static_cast<Eigen::Index>(w);
        const double factored = pv(vi) > 0.0 ? puv(ui, vi) * pvw(vi, wi) / pv(vi) : 0.0;
        worst = std::max(worst, std::abs(p(u, v, w) - factored));
      }
  if (worst > markov_tol) {
    throw Error(Errc::NotMarkov, "P(u,v,w) does not factor as P(u,v) P(w|v)", "max |P(u,v,w) - P(u,v)P(w|v)|", worst);
  }

  const std::size_t width = std::max(p.nv(), p.nw());
  const auto n = static_cast<Eigen::Index>(p.nu() * width);
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd fam_t = Eigen::MatrixXd::Zero(2, n);
  Eigen::MatrixXd fam_t1 = Eigen::MatrixXd::Zero(2, n);
  for (std::size_t u = 0; u < p.nu(); ++u) {
    const auto ui = static_cast<Eigen::Index>(u);
    for (std::size_t a = 0; a < width; ++a) {
      const auto ai = static_cast<Eigen::Index>(a);
      const auto from = static_cast<Eigen::Index>(u * width + a);
      if (a < p.nv() && pv(ai) > 0.0) {
        for (std::size_t w = 0; w < p.nw(); ++w) {
          kernel(from, static_cast<Eigen::Index>(u * width + w)) = pvw(ai, static_cast<Eigen::Index>(w)) / pv(ai);
        }
      } else {
        kernel(from, from) = 1.0;
      }
      if (a < p.nv()) {
        fam_t(0, from) = puv(ui, ai);
        fam_t(1, from) = pu(ui) * pv(ai);
      }
      if (a < p.nw()) {
        fam_t1(0, from) = puw(ui, ai);
        fam_t1(1, from) = pu(ui) * pw(ai);
      }
    }
  }
  auto support_of = [](const Eigen::MatrixXd& f) {
    return (f.row(0).array() > 0.0).all() ? ReferenceSupport::strict : ReferenceSupport::allow_zero;
  };
  const ReferenceSupport support =
      support_of(fam_t) == ReferenceSupport::strict && support_of(fam_t1) == ReferenceSupport::strict
          ? ReferenceSupport::strict
          : ReferenceSupport::allow_zero;
  return TripleEmbedding{StochasticMatrix::normalized(std::move(kernel)), MeasureFamily(std::move(fam_t), support),
                         MeasureFamily(std::move(fam_t1), support), p.nu(), width};
}

}  // namespace infomono
