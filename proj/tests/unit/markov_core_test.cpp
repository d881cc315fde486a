#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace infomono;
using namespace infomono::testing;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

StochasticMatrix mod_walk(int k) { return std::get<StochasticMatrix>(build_example_chain(ChainKind::mod_k_walk, {.K = k})); }
StochasticMatrix cycle(int k) { return std::get<StochasticMatrix>(build_example_chain(ChainKind::cyclic, {.K = k})); }
RateMatrix mm1(double lambda, double mu, int n) {
  return std::get<RateMatrix>(build_example_chain(ChainKind::mm1_truncated, {.lambda = lambda, .mu = mu, .N = n}));
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidValue;
}

}  // namespace

TEST(Distribution, RejectsBadVectors) {
  EXPECT_EQ(code_of([] { Distribution({0.5, 0.6}); }), Errc::InvalidValue);
  EXPECT_EQ(code_of([] { Distribution({1.5, -0.5}); }), Errc::InvalidValue);
  EXPECT_EQ(code_of([] { Distribution(std::vector<double>{}); }), Errc::InvalidValue);
  EXPECT_NO_THROW(Distribution({0.25, 0.75}));
}

TEST(StochasticMatrix, RowSumsChecked) {
  EXPECT_EQ(code_of([] { StochasticMatrix(mat({{0.5, 0.4}, {0.5, 0.5}})); }), Errc::InvalidValue);
  EXPECT_EQ(code_of([] { StochasticMatrix(mat({{1.2, -0.2}, {0.5, 0.5}})); }), Errc::InvalidValue);
  EXPECT_EQ(code_of([] { StochasticMatrix(mat({{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}})); }), Errc::DimensionMismatch);
}

TEST(RateMatrix, DiagonalMustBeZero) {
  EXPECT_EQ(code_of([] { RateMatrix(mat({{1.0, 1.0}, {1.0, 0.0}})); }), Errc::InvalidValue);
  EXPECT_EQ(code_of([] { RateMatrix(mat({{0.0, -1.0}, {1.0, 0.0}})); }), Errc::InvalidValue);
}

TEST(StationaryDistribution, TwoStateUniform) {
  const auto pi = stationary_distribution(StochasticMatrix(mat({{0.5, 0.5}, {0.5, 0.5}})));
  EXPECT_NEAR(pi[0], 0.5, 1e-15);
  EXPECT_NEAR(pi[1], 0.5, 1e-15);
}

TEST(StationaryDistribution, ModWalkIsUniform) {
  const auto pi = stationary_distribution(mod_walk(3));
  for (std::size_t x = 0; x < 3; ++x) EXPECT_NEAR(pi[x], 1.0 / 3.0, 1e-14);
}

TEST(StationaryDistribution, TruncatedQueueIsGeometric) {
  const auto pi = stationary_distribution(mm1(1.0, 2.0, 20));
  const double z = (1.0 - std::pow(0.5, 20)) / 0.5;
  for (std::size_t x = 0; x < 20; ++x) EXPECT_NEAR(pi[x], std::pow(0.5, static_cast<double>(x)) / z, 1e-13);
}

TEST(StationaryDistribution, ReducibleChainRejected) {
  const StochasticMatrix split(mat({{1.0, 0.0, 0.0}, {0.0, 0.5, 0.5}, {0.0, 0.5, 0.5}}));
  EXPECT_EQ(code_of([&] { stationary_distribution(split); }), Errc::NonErgodic);
  const StochasticMatrix transient(mat({{0.5, 0.5}, {0.0, 1.0}}));
  EXPECT_EQ(code_of([&] { stationary_distribution(transient); }), Errc::NonErgodic);
}

TEST(StationaryDistribution, MatchesRepeatedSquaringOnRandomChains) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_ergodic(rng, uniform_int(rng, 2, 8));
    const auto pi = stationary_distribution(p);
    const auto ref = oracle_stationary(p.matrix());
    for (std::size_t x = 0; x < pi.size(); ++x) EXPECT_NEAR(pi[x], ref[x], 1e-12);
    EXPECT_LE(global_balance_residual(p, pi), 1e-12);
  }
}

TEST(StationaryDistribution, IterativePathAgreesWithDirectSolve) {
  Rng rng(11);
  const auto p = random_sparse_ergodic(rng, 12);
  const auto direct = stationary_distribution(p, 1e-13);
  const auto iterative = stationary_distribution(p, 1e-13, {.direct_limit = 4});
  for (std::size_t x = 0; x < 12; ++x) EXPECT_NEAR(direct[x], iterative[x], 1e-11);

  const auto w = random_rates(rng, 10);
  const auto a = stationary_distribution(w, 1e-13);
  const auto b = stationary_distribution(w, 1e-13, {.direct_limit = 4});
  for (std::size_t x = 0; x < 10; ++x) EXPECT_NEAR(a[x], b[x], 1e-11);
}

TEST(EvolveDistribution, ModWalkOneStep) {
  const auto path = evolve_distribution(mod_walk(3), Distribution::delta(3, 0), 1);
  ASSERT_EQ(path.size(), 2u);
  EXPECT_DOUBLE_EQ(path[1][0], 0.0);
  EXPECT_DOUBLE_EQ(path[1][1], 0.5);
  EXPECT_DOUBLE_EQ(path[1][2], 0.5);
}

TEST(EvolveDistribution, ZeroStepsReturnsInit) {
  const auto init = Distribution({0.2, 0.3, 0.5});
  const auto path = evolve_distribution(mod_walk(3), init, 0);
  ASSERT_EQ(path.size(), 1u);
  EXPECT_EQ(path[0].probs(), init.probs());
}

TEST(EvolveDistribution, DoublyStochasticApproachesUniform) {
  Rng rng(3);
  const auto p = random_doubly_stochastic(rng, 4);
  const auto path = evolve_distribution(p, Distribution::delta(4, 2), 50);
  for (std::size_t x = 0; x < 4; ++x) EXPECT_NEAR(path.back()[x], 0.25, 1e-6);
}

TEST(EvolveDistribution, DimensionMismatch) {
  EXPECT_EQ(code_of([] { evolve_distribution(mod_walk(3), Distribution::uniform(4), 2); }), Errc::DimensionMismatch);
}

TEST(EvolveMeasures, ProportionalityPreserved) {
  Rng rng(5);
  const auto p = random_ergodic(rng, 4);
  Eigen::MatrixXd m(2, 4);
  m.row(0) << 0.1, 0.4, 0.2, 0.3;
  m.row(1) = 2.5 * m.row(0);
  const auto fams = evolve_measures(p, MeasureFamily(m), 10);
  for (const auto& f : fams) EXPECT_LE((f.measure(1) - 2.5 * f.measure(0)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EvolveMeasures, StationaryReferenceIsFixed) {
  Rng rng(6);
  const auto p = random_ergodic(rng, 5);
  const auto pi = stationary_distribution(p);
  Eigen::MatrixXd m(2, 5);
  m.row(0) = pi.row();
  m.row(1) = random_distribution(rng, 5).row();
  const auto fams = evolve_measures(p, MeasureFamily(m), 10);
  for (const auto& f : fams) EXPECT_LE((f.measure(0) - pi.row()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EvolveMeasures, MassConserved) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_ergodic(rng, 3);
    const auto fam = random_family(rng, 3, 2);
    const auto fams = evolve_measures(p, fam, 10);
    for (std::size_t t = 1; t < fams.size(); ++t) {
      EXPECT_LE((fams[t].masses() - fams[t - 1].masses()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_TRUE((fams[t].measure(0).array() > 0).all());
    }
  }
}

TEST(MasterEquation, TwoStateClosedForm) {
  const RateMatrix w(mat({{0.0, 1.0}, {1.0, 0.0}}));
  const auto path = integrate_master_equation(w, Distribution::delta(2, 0), 1e-3, 1.0);
  EXPECT_NEAR(path.back().time, 1.0, 1e-12);
  EXPECT_NEAR(path.back().dist[0], 0.5 * (1.0 + std::exp(-2.0)), 1e-6);
  for (const auto& td : path) EXPECT_NEAR(td.dist[0], 0.5 * (1.0 + std::exp(-2.0 * td.time)), 1e-6);
}

TEST(MasterEquation, StationaryStartStaysPut) {
  Rng rng(9);
  const auto w = random_rates(rng, 4);
  const auto pi = stationary_distribution(w);
  for (const auto& td : integrate_master_equation(w, pi, 0.01, 2.0))
    for (std::size_t x = 0; x < 4; ++x) EXPECT_NEAR(td.dist[x], pi[x], 1e-12);
}

TEST(MasterEquation, QueueConvergesToGeometricLaw) {
  const auto w = mm1(1.0, 2.0, 6);
  const auto pi = stationary_distribution(w);
  const auto path = integrate_master_equation(w, Distribution::delta(6, 5), 0.01, 50.0 / 2.0);
  for (std::size_t x = 0; x < 6; ++x) EXPECT_NEAR(path.back().dist[x], pi[x], 1e-4);
}

TEST(MasterEquation, ConservesProbability) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = random_rates(rng, 5);
    for (const auto& td : integrate_master_equation(w, random_distribution(rng, 5), 0.02, 3.0)) {
      double s = 0.0;
      for (double v : td.dist.probs()) s += v;
      EXPECT_NEAR(s, 1.0, 1e-9);
    }
  }
}

TEST(MasterEquation, StabilityGuardAndArguments) {
  const RateMatrix w(mat({{0.0, 10.0}, {10.0, 0.0}}));
  EXPECT_EQ(code_of([&] { integrate_master_equation(w, Distribution::delta(2, 0), 0.2, 1.0); }), Errc::UnstableStep);
  EXPECT_EQ(code_of([&] { integrate_master_equation(w, Distribution::uniform(3), 0.01, 1.0); }), Errc::DimensionMismatch);
}

TEST(CheckBalance, ModWalkDetailed) {
  const auto r = check_balance(mod_walk(4), Distribution::uniform(4), 1e-12);
  EXPECT_TRUE(r.satisfies_global_balance);
  EXPECT_TRUE(r.satisfies_detailed_balance);
  EXPECT_TRUE(r.is_doubly_stochastic);
}

TEST(CheckBalance, CycleGlobalButNotDetailed) {
  const auto r = check_balance(cycle(3), Distribution::uniform(3), 1e-12);
  EXPECT_TRUE(r.satisfies_global_balance);
  EXPECT_FALSE(r.satisfies_detailed_balance);
  EXPECT_NEAR(r.detailed_residual, 1.0 / 3.0, 1e-15);
}

TEST(CheckBalance, QueueDetailedWithGeometricLaw) {
  const auto w = mm1(1.0, 2.0, 8);
  std::vector<double> geo(8);
  double z = 0.0;
  for (std::size_t x = 0; x < 8; ++x) z += geo[x] = std::pow(0.5, static_cast<double>(x));
  for (auto& v : geo) v /= z;
  const auto r = check_balance(w, Distribution(geo), 1e-12);
  EXPECT_TRUE(r.satisfies_detailed_balance);
  EXPECT_LE(r.detailed_residual, 1e-12);
  EXPECT_FALSE(r.is_doubly_stochastic);
}

TEST(CheckBalance, DetailedImpliesGlobal) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_ergodic(rng, uniform_int(rng, 2, 5));
    const auto q = random_distribution(rng, p.size());
    for (double tol : {1e-12, 1e-3, 0.5}) {
      const auto r = check_balance(p, q, tol);
      if (r.satisfies_detailed_balance) {
        EXPECT_TRUE(r.satisfies_global_balance);
        EXPECT_LE(r.global_residual, tol);
      }
    }
  }
}

TEST(BackwardMatrix, ReversibleChainIsItsOwnReverse) {
  const auto p = mod_walk(5);
  const auto b = backward_matrix(p, Distribution::uniform(5));
  EXPECT_LE(max_abs_diff(b.matrix(), p.matrix()), 1e-15);
}

TEST(BackwardMatrix, CycleReverses) {
  const auto b = backward_matrix(cycle(3), Distribution::uniform(3));
  const Eigen::MatrixXd expect = mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  EXPECT_LE(max_abs_diff(b.matrix(), expect), 1e-15);
}

TEST(BackwardMatrix, RowsSumToOneAndInvolution) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_ergodic(rng, uniform_int(rng, 2, 6));
    const auto pi = stationary_distribution(p);
    const auto b = backward_matrix(p, pi);
    EXPECT_LE((b.matrix().rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
    EXPECT_LE(max_abs_diff(backward_matrix(b, pi).matrix(), p.matrix()), 1e-12);
  }
}

TEST(BackwardMatrix, Errors) {
  EXPECT_EQ(code_of([] { backward_matrix(cycle(3), Distribution({0.5, 0.5, 0.0})); }), Errc::ZeroProbability);
  EXPECT_EQ(code_of([] { backward_matrix(cycle(3), Distribution({0.5, 0.25, 0.25})); }), Errc::NotStationary);
}

TEST(BuildExampleChain, Definitions) {
  EXPECT_LE(max_abs_diff(mod_walk(3).matrix(), mat({{0, .5, .5}, {.5, 0, .5}, {.5, .5, 0}})), 0.0);
  EXPECT_LE(max_abs_diff(cycle(3).matrix(), mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})), 0.0);
  EXPECT_LE(max_abs_diff(mm1(1, 2, 3).matrix(), mat({{0, 1, 0}, {2, 0, 1}, {0, 2, 0}})), 0.0);
  // K = 2 folds both steps onto the other state
  EXPECT_LE(max_abs_diff(mod_walk(2).matrix(), mat({{0, 1}, {1, 0}})), 0.0);
}

TEST(BuildExampleChain, BadParams) {
  EXPECT_EQ(code_of([] { build_example_chain(ChainKind::mod_k_walk, {.K = 1}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { build_example_chain(ChainKind::mm1_truncated, {.lambda = 2, .mu = 1, .N = 4}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { build_example_chain(ChainKind::mm1_truncated, {.lambda = 1, .mu = 2, .N = 1}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { build_example_chain(ChainKind::custom, {}); }), Errc::BadParams);
}

TEST(RateMatrix, ResistancesFromStationaryLaw) {
  const auto w = mm1(1.0, 2.0, 4);
  const auto pi = stationary_distribution(w);
  const Eigen::MatrixXd r = w.resistances(pi);
  // R_xx' = 1 / (P(x') W_x'x); equal along an edge under detailed balance
  EXPECT_NEAR(r(0, 1), 1.0 / (pi[1] * 2.0), 1e-9);
  EXPECT_NEAR(r(0, 1), r(1, 0), 1e-9);
}
