#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace infomono;
using namespace infomono::testing;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidValue;
}

JointDistribution independent(const std::vector<double>& px, const std::vector<double>& py) {
  Eigen::MatrixXd t(static_cast<Eigen::Index>(px.size()), static_cast<Eigen::Index>(py.size()));
  for (std::size_t x = 0; x < px.size(); ++x)
    for (std::size_t y = 0; y < py.size(); ++y) t(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = px[x] * py[y];
  return JointDistribution(t, 1e-12);
}

}  // namespace

TEST(Entropy, Examples) {
  EXPECT_EQ(shannon_entropy(Distribution({1.0, 0.0, 0.0})), 0.0);
  EXPECT_NEAR(shannon_entropy(Distribution::uniform(3)), std::log(3.0), 1e-15);
  EXPECT_NEAR(shannon_entropy(Distribution({0.5, 0.5, 0.0})), std::log(2.0), 1e-15);
}

TEST(Entropy, BoundedByLogN) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = uniform_int(rng, 1, 8);
    const auto p = random_distribution(rng, n);
    const double h = shannon_entropy(p);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log(static_cast<double>(n)) + 1e-12);
    EXPECT_NEAR(h, oracle_entropy(p.probs()), 1e-13);
  }
}

TEST(FDivergence, EqualArgumentsGiveQOfOne) {
  Rng rng(2);
  for (const auto& q : builtin_catalog()) {
    const auto p = random_distribution(rng, 4);
    EXPECT_NEAR(f_divergence(q, p, p), q(1.0), 1e-15) << q.name();
  }
}

TEST(FDivergence, NegLogTwoPoint) {
  const double d = f_divergence(neg_log(), Distribution({0.5, 0.5}), Distribution({0.25, 0.75}));
  EXPECT_NEAR(d, 0.5 * std::log(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(d, 0.1438410362, 1e-10);
}

TEST(FDivergence, NegSqrtIsMinusBhattacharyya) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_distribution(rng, 5);
    const auto b = random_distribution(rng, 5);
    double bc = 0.0;
    for (std::size_t x = 0; x < 5; ++x) bc += std::sqrt(a[x] * b[x]);
    EXPECT_NEAR(f_divergence(neg_pow(0.5), a, b), -bc, 1e-14);
  }
}

TEST(FDivergence, ULogUGivesReverseKl) {
  Rng rng(4);
  const auto p = random_distribution(rng, 4);
  const auto pt = random_distribution(rng, 4);
  EXPECT_NEAR(f_divergence(u_log_u(), p, pt), kl_divergence(pt, p), 1e-14);
}

TEST(FDivergence, SupportMismatch) {
  EXPECT_EQ(code_of([] { f_divergence(neg_log(), Distribution({1.0, 0.0}), Distribution({0.5, 0.5})); }),
            Errc::SupportMismatch);
  // reference positive but the argument hits Q's boundary
  EXPECT_EQ(code_of([] { f_divergence(neg_log(), Distribution({0.5, 0.5}), Distribution({1.0, 0.0})); }),
            Errc::SupportMismatch);
  // both zero: contributes nothing
  EXPECT_NEAR(f_divergence(neg_log(), Distribution({1.0, 0.0}), Distribution({1.0, 0.0})), 0.0, 0.0);
}

TEST(FDivergence, ArityAndSize) {
  EXPECT_EQ(code_of([] { f_divergence(rel_entropy(), Distribution::uniform(2), Distribution::uniform(2)); }),
            Errc::ArityMismatch);
  EXPECT_EQ(code_of([] { f_divergence(neg_log(), Distribution::uniform(2), Distribution::uniform(3)); }),
            Errc::DimensionMismatch);
}

TEST(KlDivergence, InfiniteRaises) {
  EXPECT_EQ(code_of([] { kl_divergence(Distribution({0.5, 0.5}), Distribution({1.0, 0.0})); }), Errc::SupportMismatch);
  EXPECT_EQ(kl_divergence(Distribution({1.0, 0.0}), Distribution({0.5, 0.5})), std::log(2.0));
}

TEST(Mi1973, IndependentGivesQOfOne) {
  const auto j = independent({0.2, 0.8}, {0.1, 0.3, 0.6});
  for (const auto& q : builtin_catalog()) EXPECT_NEAR(generalized_mi_1973(q, j), q(1.0), 1e-15) << q.name();
  EXPECT_NEAR(generalized_mi_1973(neg_log(), j), 0.0, 1e-15);
}

TEST(Mi1973, NegLogIsClassicalMi) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto j = random_joint(rng, 3, 3);
    EXPECT_NEAR(generalized_mi_1973(neg_log(), j), oracle_mi(j.table()), 1e-14);
  }
}

TEST(Mi1973, JensenFloor) {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto j = random_joint(rng, uniform_int(rng, 2, 4), uniform_int(rng, 2, 4));
    for (const auto& q : builtin_catalog()) EXPECT_GE(generalized_mi_1973(q, j), q(1.0) - 1e-12) << q.name();
  }
}

TEST(Mi1973, NegSqrtOnEpsilonChannelMatchesClosedForm) {
  // K = 4 letters, eps_u = d everywhere, s = 0: only cells with P(u,v) > 0
  // enter, so the zero cells of the joint are handled by restricting to the
  // support, which is exactly the closed form at s = 0.
  const int K = 4;
  const double d = 0.3;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(K, K);
  for (int u = 0; u < K; ++u) {
    t(u, u) = (1.0 - d) / K;
    t(u, (u + 1) % K) = d / K;
  }
  const JointDistribution j(t);
  double direct = 0.0;
  for (int u = 0; u < K; ++u)
    for (int v = 0; v < K; ++v)
      if (t(u, v) > 0) direct += -t(u, v) * std::sqrt((1.0 / (K * K)) / t(u, v));
  // the product measure is positive on cells where the joint vanishes
  EXPECT_EQ(code_of([&] { generalized_mi_1973(neg_sqrt(), j); }), Errc::SupportMismatch);
  // on the support the closed form is -(1/K)[sqrt(K d) + sqrt(K(1-d))]
  EXPECT_NEAR(direct, -(std::sqrt(K * d) + std::sqrt(K * (1.0 - d))) / K, 1e-15);
  // K = 2: every cell is in the support and the library agrees
  Eigen::MatrixXd t2(2, 2);
  t2 << (1 - d) / 2, d / 2, d / 2, (1 - d) / 2;
  EXPECT_NEAR(generalized_mi_1973(neg_sqrt(), JointDistribution(t2)), -(std::sqrt(2 * d) + std::sqrt(2 * (1 - d))) / 2,
              1e-15);
}

TEST(Lautum, Identities) {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto j = random_joint(rng, 3, 3);
    EXPECT_NEAR(lautum_variant(u_log_u(), j), oracle_mi(j.table()), 1e-14);
    double lautum = 0.0;
    const auto px = j.px();
    const auto py = j.py();
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) lautum += px(x) * py(y) * std::log(px(x) * py(y) / j.table()(x, y));
    EXPECT_NEAR(lautum_variant(neg_log(), j), lautum, 1e-14);
  }
  const auto ind = independent({0.3, 0.7}, {0.5, 0.5});
  EXPECT_NEAR(lautum_variant(neg_sqrt(), ind), -1.0, 1e-15);
}

TEST(Zz1975, ReducesToMi1973) {
  Rng rng(8);
  const auto j = random_joint(rng, 3, 4);
  const PairMeasure prod(j.product_of_marginals());
  for (const auto& q : builtin_catalog()) EXPECT_NEAR(zz_functional_1975(q, j, {prod}), generalized_mi_1973(q, j), 1e-15);
  EXPECT_NEAR(zz_functional_1975(square(), j, {PairMeasure(j.table())}), 1.0, 1e-15);
}

TEST(Zz1975, RelEntropyAgainstDoubleLoop) {
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    const auto j = random_joint(rng, 3, 3);
    const Eigen::MatrixXd m1 = random_joint(rng, 3, 3).table() * 1.7;
    const Eigen::MatrixXd m2 = random_joint(rng, 3, 3).table() * 0.6;
    double oracle = 0.0;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        const double p = j.table()(x, y);
        const double u1 = m1(x, y) / p, u2 = m2(x, y) / p;
        oracle += p * u1 * std::log(u1 / u2);
      }
    EXPECT_NEAR(zz_functional_1975(rel_entropy(), j, {PairMeasure(m1), PairMeasure(m2)}), oracle, 1e-13);
  }
}

TEST(Zz1975, Errors) {
  Rng rng(10);
  const auto j = random_joint(rng, 2, 2);
  EXPECT_EQ(code_of([&] { zz_functional_1975(rel_entropy(), j, {PairMeasure(j.table())}); }), Errc::ArityMismatch);
  Eigen::MatrixXd zero_cell = j.table();
  zero_cell(0, 0) = 0.0;
  zero_cell /= zero_cell.sum();
  EXPECT_EQ(code_of([&] { zz_functional_1975(neg_log(), JointDistribution(zero_cell), {PairMeasure(j.table())}); }),
            Errc::SupportMismatch);
}

TEST(VFunctional, ConstantRatios) {
  Eigen::MatrixXd m(3, 3);
  m.row(0) << 0.2, 0.5, 0.9;
  m.row(1) = 3.0 * m.row(0);
  m.row(2) = 3.0 * m.row(0);
  const std::vector<double> cc{3.0, 3.0};
  const auto q = neg_geomean(2);
  EXPECT_NEAR(v_functional(q, MeasureFamily(m)), q(cc) * 1.6, 1e-14);
}

TEST(VFunctional, EqualMeasuresGiveZeroForULogU) {
  Rng rng(11);
  const auto p = random_distribution(rng, 4);
  Eigen::MatrixXd m(2, 4);
  m.row(0) = p.row();
  m.row(1) = p.row();
  EXPECT_NEAR(v_functional(u_log_u(), MeasureFamily(m)), 0.0, 1e-15);
  const auto p2 = random_distribution(rng, 4);
  m.row(1) = p2.row();
  EXPECT_NEAR(v_functional(u_log_u(), MeasureFamily(m)), kl_divergence(p2, p), 1e-14);
}

TEST(VFunctional, PerspectiveFormAgrees) {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = uniform_int(rng, 2, 6);
    const std::size_t k = uniform_int(rng, 1, 3);
    const auto fam = random_family(rng, n, k);
    const auto ref = random_distribution(rng, n);
    for (const auto& q : {separable(u_log_u(), k), separable(neg_sqrt(), k), neg_geomean(k)}) {
      const double a = v_functional(q, fam);
      EXPECT_NEAR(v_functional_via_reference(q, fam, ref), a, 1e-12 * (1.0 + std::abs(a))) << q.name();
    }
  }
}

TEST(VFunctional, ArityMismatch) {
  Rng rng(13);
  EXPECT_EQ(code_of([&] { v_functional(neg_log(), random_family(rng, 3, 2)); }), Errc::ArityMismatch);
}

TEST(LinearCombination, PresetReducesToMi) {
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    const auto j = random_joint(rng, 3, 3);
    for (const auto& q : builtin_catalog()) {
      EXPECT_NEAR(j_simplextension(q, j, 0.0), generalized_mi_1973(q, j), 1e-14) << q.name();
    }
    // s = (1, 0, ...), t = (0, P(x_1), ..., P(x_n)) directly
    const auto [sc, tc] = simplextension_coefficients(j, 0.0);
    EXPECT_EQ(sc[0], 1.0);
    EXPECT_NEAR(j_linear_combination(neg_log(), j, sc, tc), oracle_mi(j.table()), 1e-14);
  }
}

TEST(LinearCombination, PositiveSDiffersFromMi) {
  Rng rng(15);
  const auto j = random_joint(rng, 3, 3);
  EXPECT_GT(std::abs(j_simplextension(neg_sqrt(), j, 1.0) - generalized_mi_1973(neg_sqrt(), j)), 1e-3);
}

TEST(LinearCombination, SimplextensionClosedForm) {
  Rng rng(16);
  const auto j = random_joint(rng, 3, 4);
  const double s = 0.7;
  const auto px = j.px();
  const auto py = j.py();
  const auto c = j.conditional();
  double oracle = 0.0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 4; ++y) {
      const double den = c(x, y) + s * py(y);
      oracle += px(x) * den * -std::sqrt(py(y) / den);
    }
  EXPECT_NEAR(j_simplextension(neg_sqrt(), j, s), oracle, 1e-14);
}

TEST(LinearCombination, EqualsZz1975WithPerspective) {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto j = random_joint(rng, 3, 3);
    std::vector<double> sc(4), tc(4);
    for (auto& v : sc) v = uniform01(rng);
    for (auto& v : tc) v = uniform01(rng);
    const auto mu0 = linear_combination_measure(j, sc);
    const auto mu1 = linear_combination_measure(j, tc);
    for (const auto& q : builtin_catalog()) {
      const double direct = j_linear_combination(q, j, sc, tc);
      const double via = zz_functional_1975(perspective(q).as_convex(), j, {mu0, mu1});
      EXPECT_NEAR(direct, via, 1e-12 * (1.0 + std::abs(direct))) << q.name();
    }
  }
}

TEST(LinearCombination, Errors) {
  Rng rng(18);
  const auto j = random_joint(rng, 2, 2);
  EXPECT_EQ(code_of([&] { j_linear_combination(neg_log(), j, {0, 0, 0}, {1, 0, 0}); }), Errc::BadCoefficients);
  EXPECT_EQ(code_of([&] { j_linear_combination(neg_log(), j, {1, 0}, {1, 0}); }), Errc::BadCoefficients);
  EXPECT_EQ(code_of([&] { j_linear_combination(neg_log(), j, {-1, 2, 0}, {1, 0, 0}); }), Errc::BadCoefficients);
  EXPECT_EQ(code_of([&] { simplextension_coefficients(j, -1.0); }), Errc::BadCoefficients);
}

TEST(ExpectedJ, SingleLetterMatchesTwoMeasureForm) {
  // m = 1, s = (1, 0), t = (0, 1): E_{x1} sum P(x,y) Q(P(y|x1)/P(y|x)), i.e.
  // sum_x1 P(x1) sum_{x,y} P(x,y) Q(mu_1/P) with mu_1 = P(x) P(y|x1).
  Rng rng(19);
  for (int i = 0; i < 20; ++i) {
    const auto j = random_joint(rng, 3, 3);
    const auto px = j.px();
    const auto c = j.conditional();
    for (const auto& q : builtin_catalog()) {
      double oracle = 0.0;
      for (int x1 = 0; x1 < 3; ++x1)
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y) oracle += px(x1) * j.table()(x, y) * q(c(x1, y) / c(x, y));
      EXPECT_NEAR(expected_j_functional(q, j, {1, 0}, {0, 1}, 1), oracle, 1e-13) << q.name();
    }
  }
}

TEST(ExpectedJ, IdenticalConditionalsGiveQOfOne) {
  const auto j = independent({0.3, 0.3, 0.4}, {0.6, 0.4});
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<double> s(m + 1, 0.5), t(m + 1, 0.5);
    EXPECT_NEAR(expected_j_functional(neg_log(), j, s, t, m), 0.0, 1e-14);
  }
}

TEST(ExpectedJ, TwoByTwoHandRolled) {
  Eigen::MatrixXd t(2, 2);
  t << 0.4, 0.1, 0.2, 0.3;
  const JointDistribution j(t);
  // P(x) = (0.5, 0.5); P(y|0) = (0.8, 0.2); P(y|1) = (0.4, 0.6)
  const double c[2][2] = {{0.8, 0.2}, {0.4, 0.6}};
  double oracle = 0.0;
  for (int x1 = 0; x1 < 2; ++x1) {
    double inner = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const double mu0 = 0.5 * (c[x][y] + 0.5 * c[x1][y]);
        const double mu1 = 0.5 * (0.2 * c[x][y] + c[x1][y]);
        inner += mu0 * std::pow(mu1 / mu0, 2);
      }
    oracle += 0.5 * inner;
  }
  EXPECT_NEAR(expected_j_functional(square(), j, {1.0, 0.5}, {0.2, 1.0}, 1), oracle, 1e-15);
}

TEST(ExpectedJ, Errors) {
  Rng rng(20);
  const auto j = random_joint(rng, 2, 2);
  EXPECT_EQ(code_of([&] { expected_j_functional(neg_log(), j, {1, 0, 0, 0, 0}, {0, 1, 1, 1, 1}, 4); }),
            Errc::TooManyLetters);
  EXPECT_EQ(code_of([&] { expected_j_functional(neg_log(), j, {1, 0}, {0, 1}, 2); }), Errc::BadCoefficients);
}

TEST(DataProcessing, EveryBuiltinOnRandomChannels) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto j = random_joint(rng, 3, 3);
    const StochasticMatrix ch = StochasticMatrix::normalized(random_kernel(rng, 3, 3));
    const auto jz = j.push_through(ch);
    for (const auto& q : builtin_catalog()) EXPECT_LE(generalized_mi_1973(q, jz), generalized_mi_1973(q, j) + 1e-12);
  }
}

TEST(Embedding, OneStepReproducesUwMeasures) {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_markov_triple(rng);
    const auto e = embed_triple_as_chain(p);
    const auto next = evolve_measures(e.kernel, e.at_t, 1)[1];
    EXPECT_LE(max_abs_diff(next.matrix(), e.at_t1.matrix()), 1e-12);
  }
}

TEST(Embedding, VDropEqualsMiDrop) {
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_markov_triple(rng);
    const auto e = embed_triple_as_chain(p);
    const JointDistribution uv(p.uv(), 1e-10), uw(p.uw(), 1e-10);
    for (const auto& q : {neg_sqrt(), neg_log()}) {
      const double drop = v_functional(q, e.at_t) - v_functional(q, e.at_t1);
      EXPECT_NEAR(drop, generalized_mi_1973(q, uv) - generalized_mi_1973(q, uw), 1e-12);
      EXPECT_GE(drop, -1e-12);
    }
  }
}

TEST(Embedding, IdentityChannel) {
  Rng rng(25);
  const auto pu = random_distribution(rng, 3);
  const StochasticMatrix a = StochasticMatrix::normalized(random_kernel(rng, 3, 3));
  const auto p = TripleDistribution::from_markov(pu, a, Eigen::MatrixXd::Identity(3, 3));
  const auto e = embed_triple_as_chain(p);
  EXPECT_LE(max_abs_diff(e.at_t.matrix(), e.at_t1.matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(e.kernel.matrix(), Eigen::MatrixXd::Identity(9, 9)), 0.0);
}

TEST(Embedding, UnequalAlphabetsArePadded) {
  Rng rng(26);
  const auto pu = random_distribution(rng, 2);
  const StochasticMatrix a = StochasticMatrix::normalized(random_kernel(rng, 2, 2));
  const Eigen::MatrixXd b = random_kernel(rng, 2, 4);
  const auto e = embed_triple_as_chain(TripleDistribution::from_markov(pu, a, b));
  EXPECT_EQ(e.width, 4u);
  EXPECT_EQ(e.kernel.size(), 8u);
  const auto next = evolve_measures(e.kernel, e.at_t, 1)[1];
  EXPECT_LE(max_abs_diff(next.matrix(), e.at_t1.matrix()), 1e-12);
}

TEST(Embedding, NotMarkovRejected) {
  // U = W, V independent of both
  std::vector<double> d(8, 0.0);
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v) d[(u * 2 + v) * 2 + u] = 0.25;
  EXPECT_EQ(code_of([&] { embed_triple_as_chain(TripleDistribution(2, 2, 2, d)); }), Errc::NotMarkov);
}
